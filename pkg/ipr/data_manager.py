"""
Data Manager for the IPR matrix lab.

Handles reading, validation and writing of every file format: matrices,
colorings, witnesses, verdicts, certificates, family specs, J-set queries,
witness samples (JSON Lines) and sweep tables (CSV).
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Type, Union

import jsonlines
import pandas as pd
from pydantic import BaseModel, ValidationError

from utils import setup_logger

from .classes import (BlockClass, FirstEntriesCert, PivotCert, SegmentationCert, TriCert,
                      certificate_to_dict)
from .coloring import Coloring
from .families import load_family
from .matrixcore import FinMatrix, InfMatrixSpec, SparseRow, format_rational, to_rational
from .schemas import (CertificateModel, ColoringModel, FamilySpecModel, MatrixModel,
                      SequencesModel, TargetSetModel, VerdictModel, WitnessModel,
                      WitnessSampleModel)
from .search import SearchBounds, Verdict, VerdictKind, Witness

PathLike = Union[str, Path]


class MalformedInputError(ValueError):
    """Raised when a file does not parse under its format."""


def _row_from_pairs(pairs: Sequence[Tuple[int, Any]]) -> SparseRow:
    columns = [col for col, _ in pairs]
    if len(set(columns)) != len(columns):
        raise ValueError("repeated column index in sparse row")
    return SparseRow.from_pairs(pairs)


def _row_to_pairs(row: SparseRow) -> List[List[Any]]:
    return [[col, format_rational(value)] for col, value in row.entries]


def parse_row(text: str) -> SparseRow:
    """
    Parse a row given on the command line.

    Either dense ("1,0,-1/2") or sparse ("0:1,2:-1/2") comma separated values.
    """
    items = [item.strip() for item in text.split(",") if item.strip()]
    if not items:
        raise ValueError("empty row")
    if any(":" in item for item in items):
        pairs = []
        for item in items:
            col, sep, value = item.partition(":")
            if not sep:
                raise ValueError(f"mixed dense and sparse entries in {text!r}")
            pairs.append((int(col), value))
        return _row_from_pairs(pairs)
    return SparseRow.from_dense(items)


def parse_list(text: str) -> List[str]:
    """Comma separated values, blanks dropped."""
    return [item.strip() for item in text.split(",") if item.strip()]


class DataManager:
    """Manages reading and writing of the lab's file formats."""

    def __init__(self, log_level: str = "INFO"):
        """
        Initialize the data manager.

        Args:
            log_level: Logging level for the data manager logger
        """
        self.logger = setup_logger("data_manager", log_level)

    # ------------------------------------------------------------ raw JSON

    def read_json(self, path: PathLike) -> Any:
        """
        Load a JSON document.

        Raises:
            MalformedInputError: The file is unreadable or not valid JSON
        """
        try:
            with open(path, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except (OSError, UnicodeDecodeError, json.JSONDecodeError) as e:
            raise MalformedInputError(f"{path}: {e}") from None

        self.logger.debug(f"Loaded {path}")
        return data

    def dumps(self, data: Any) -> str:
        return json.dumps(data, indent=2, ensure_ascii=False)

    def save_json(self, data: Any, path: PathLike) -> str:
        """
        Write a JSON document, creating parent directories.

        Returns:
            Path to saved file
        """
        file_path = Path(path)
        file_path.parent.mkdir(parents=True, exist_ok=True)
        try:
            with open(file_path, 'w', encoding='utf-8') as f:
                f.write(self.dumps(data) + "\n")
        except Exception as e:
            self.logger.error(f"Error saving {file_path}: {str(e)}")
            raise

        self.logger.debug(f"Saved {file_path}")
        return str(file_path)

    def _validate(self, model: Type[BaseModel], data: Any, source: str) -> Any:
        try:
            return model.model_validate(data)
        except ValidationError as e:
            errors = "; ".join(f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}"
                               for err in e.errors())
            raise MalformedInputError(f"{source}: {errors}") from None

    # ------------------------------------------------------------ matrices

    def matrix_to_dict(self, A: FinMatrix) -> Dict[str, Any]:
        return {
            "nrows": A.nrows,
            "ncols": A.ncols,
            "rows": [_row_to_pairs(row) for row in A.rows],
        }

    def matrix_from_dict(self, data: Any, source: str = "<matrix>") -> FinMatrix:
        model = self._validate(MatrixModel, data, source)
        try:
            rows = tuple(_row_from_pairs(pairs) for pairs in model.rows)
            return FinMatrix(model.nrows, model.ncols, rows)
        except (ValueError, TypeError, ZeroDivisionError) as e:
            raise MalformedInputError(f"{source}: {e}") from None

    def load_matrix(self, path: PathLike) -> FinMatrix:
        A = self.matrix_from_dict(self.read_json(path), str(path))
        self.logger.debug(f"Matrix {A.nrows}x{A.ncols} from {path}")
        return A

    def save_matrix(self, A: FinMatrix, path: PathLike) -> str:
        return self.save_json(self.matrix_to_dict(A), path)

    # ------------------------------------------------------------ colorings and witnesses

    def coloring_to_dict(self, c: Coloring) -> Dict[str, Any]:
        return {"n": c.n, "r": c.r, "colors": list(c.colors)}

    def coloring_from_dict(self, data: Any, source: str = "<coloring>") -> Coloring:
        model = self._validate(ColoringModel, data, source)
        try:
            return Coloring(model.n, model.r, tuple(model.colors))
        except ValueError as e:
            raise MalformedInputError(f"{source}: {e}") from None

    def load_coloring(self, path: PathLike) -> Coloring:
        return self.coloring_from_dict(self.read_json(path), str(path))

    def witness_to_dict(self, w: Witness) -> Dict[str, Any]:
        return {"x": list(w.x), "image": list(w.image), "color": w.color}

    def witness_from_dict(self, data: Any, source: str = "<witness>") -> Witness:
        model = self._validate(WitnessModel, data, source)
        return Witness(tuple(model.x), tuple(model.image), model.color)

    def load_witness(self, path: PathLike) -> Witness:
        return self.witness_from_dict(self.read_json(path), str(path))

    # ------------------------------------------------------------ verdicts

    def verdict_to_dict(self, v: Verdict) -> Dict[str, Any]:
        """JSON form of a verdict; samples sorted by counter, no timings."""
        b = v.bounds
        return {
            "kind": v.kind.value,
            "bounds": {
                "colors": b.colors,
                "universe": b.universe,
                "xmax": b.x_max,
                "strong": b.strong,
                "symmetry_break": b.symmetry_break,
            },
            "checked": v.checked,
            "counter": v.counter,
            "coloring": self.coloring_to_dict(v.coloring) if v.coloring else None,
            "resume": v.resume,
            "witnesses": [{"counter": counter, **self.witness_to_dict(w)}
                          for counter, w in sorted(v.witnesses.items())],
        }

    def verdict_from_dict(self, data: Any, source: str = "<verdict>") -> Verdict:
        model = self._validate(VerdictModel, data, source)
        try:
            b = model.bounds
            bounds = SearchBounds(colors=b.colors, universe=b.universe, x_max=b.xmax,
                                  strong=b.strong, symmetry_break=b.symmetry_break)
            coloring = None
            if model.coloring is not None:
                coloring = Coloring(model.coloring.n, model.coloring.r,
                                    tuple(model.coloring.colors))
        except ValueError as e:
            raise MalformedInputError(f"{source}: {e}") from None

        witnesses = {
            sample.counter: Witness(tuple(sample.x), tuple(sample.image), sample.color)
            for sample in model.witnesses
        }
        return Verdict(VerdictKind(model.kind), bounds, model.checked,
                       coloring=coloring, counter=model.counter,
                       resume=model.resume, witnesses=witnesses)

    def load_verdict(self, path: PathLike) -> Verdict:
        return self.verdict_from_dict(self.read_json(path), str(path))

    def save_samples(self, verdict: Verdict, path: PathLike) -> str:
        """
        Write a verdict's witness samples as JSON Lines, one per line.

        Returns:
            Path to saved file
        """
        file_path = Path(path)
        file_path.parent.mkdir(parents=True, exist_ok=True)
        records = [{"counter": counter, **self.witness_to_dict(w)}
                   for counter, w in sorted(verdict.witnesses.items())]
        with jsonlines.open(file_path, mode='w') as writer:
            writer.write_all(records)

        self.logger.info(f"Saved {len(records)} witness samples to {file_path}")
        return str(file_path)

    def load_samples(self, path: PathLike) -> Dict[int, Witness]:
        samples: Dict[int, Witness] = {}
        try:
            with jsonlines.open(path, mode='r') as reader:
                for line, record in enumerate(reader, start=1):
                    model = self._validate(WitnessSampleModel, record, f"{path}:{line}")
                    samples[model.counter] = Witness(tuple(model.x), tuple(model.image),
                                                     model.color)
        except (OSError, jsonlines.InvalidLineError) as e:
            raise MalformedInputError(f"{path}: {e}") from None
        return samples

    # ------------------------------------------------------------ certificates

    def _t_from_dict(self, t: Optional[Dict[str, Any]]) -> FirstEntriesCert:
        if t is None:
            raise ValueError("first entries certificate without t")
        pairs = sorted((int(col), to_rational(value)) for col, value in t.items())
        return FirstEntriesCert(tuple(pairs))

    def certificate_from_dict(self, data: Any, source: str = "<certificate>") -> Any:
        model = self._validate(CertificateModel, data, source)
        try:
            if model.kind == "first_entries":
                return self._t_from_dict(model.t)
            if model.kind == "segmentation":
                if model.alphas is None or model.blocks is None:
                    raise ValueError("segmentation certificate needs alphas and blocks")
                blocks = tuple(
                    BlockClass(block.block_class,
                               self._t_from_dict(block.t) if block.t is not None else None)
                    for block in model.blocks)
                return SegmentationCert(tuple(model.alphas), blocks)
            if model.d is None or model.j is None:
                raise ValueError(f"{model.kind} certificate needs d and j")
            if model.kind == "restricted_triangular":
                return TriCert(model.d, tuple(model.j))
            return PivotCert(model.d, tuple(model.j))
        except (ValueError, ZeroDivisionError) as e:
            raise MalformedInputError(f"{source}: {e}") from None

    def load_certificates(self, path: PathLike) -> List[Any]:
        """
        Load a certificate file: one certificate object, or a list of them
        as written by `save_certificates`.

        Raises:
            MalformedInputError: The file is an empty list or any entry does not parse
        """
        data = self.read_json(path)
        if not isinstance(data, list):
            return [self.certificate_from_dict(data, str(path))]
        if not data:
            raise MalformedInputError(f"{path}: no certificates in file")
        return [self.certificate_from_dict(entry, f"{path}[{i}]")
                for i, entry in enumerate(data)]

    def save_certificates(self, certs: Sequence[Any], path: PathLike) -> str:
        return self.save_json([certificate_to_dict(cert) for cert in certs], path)

    # ------------------------------------------------------------ families and J-set queries

    def family_from_dict(self, data: Any, source: str = "<family>") -> InfMatrixSpec:
        """
        Build the infinite matrix a family spec names.

        Raises:
            MalformedInputError: The spec does not parse
            ValueError: Unknown family or bad parameters
        """
        model = self._validate(FamilySpecModel, data, source)
        params: Dict[str, Any] = {"family": model.family}
        if model.nvars is not None:
            params["nvars"] = model.nvars
        if model.rows is not None:
            try:
                params["rows"] = [_row_from_pairs(pairs) for pairs in model.rows]
            except (ValueError, TypeError, ZeroDivisionError) as e:
                raise MalformedInputError(f"{source}: {e}") from None
        return load_family(params)

    def load_family_spec(self, path: PathLike) -> InfMatrixSpec:
        return self.family_from_dict(self.read_json(path), str(path))

    def load_target_set(self, path: PathLike) -> List[int]:
        """Target set as {"set": [...]} or a bare list."""
        data = self.read_json(path)
        if isinstance(data, list):
            data = {"set": data}
        return list(self._validate(TargetSetModel, data, str(path)).members)

    def load_sequences(self, path: PathLike) -> List[List[int]]:
        """Sequences as {"seqs": [[...], ...]} or a bare list of lists."""
        data = self.read_json(path)
        if isinstance(data, list):
            data = {"seqs": data}
        return [list(seq) for seq in self._validate(SequencesModel, data, str(path)).seqs]

    # ------------------------------------------------------------ exports

    def export_to_csv(self, table: pd.DataFrame, path: PathLike) -> str:
        """
        Export a table (a sweep result) to CSV.

        Returns:
            Path to exported CSV file
        """
        if table.empty:
            raise ValueError("No rows to export")

        file_path = Path(path)
        file_path.parent.mkdir(parents=True, exist_ok=True)
        try:
            table.to_csv(file_path, index=False, encoding='utf-8')
            self.logger.info(f"Exported {len(table)} rows to {file_path}")
            return str(file_path)

        except Exception as e:
            self.logger.error(f"Error exporting to CSV: {str(e)}")
            raise
