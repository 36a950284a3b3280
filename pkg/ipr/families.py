"""
Built-in infinite matrix families.

Each builder returns an InfMatrixSpec; `load_family` turns a family spec
dict ({"family": name, ...params}) into one. Names match FAMILY_CONFIGS.
"""

from fractions import Fraction
from typing import Any, Callable, Dict, Optional, Sequence

from config.settings import FAMILY_CONFIGS

from .constructors import fs_row
from .matrixcore import InfMatrixSpec, SparseRow

ONE = Fraction(1)


def identity_family() -> InfMatrixSpec:
    return InfMatrixSpec(
        row_generator=lambda n: SparseRow(((n, ONE),)),
        support_bound=lambda n: n + 1,
        name="identity",
        metadata={"triangular": {"d": 1}},
    )


def fs_family(nvars: Optional[int] = None) -> InfMatrixSpec:
    """Finite sums rows in binary counting order, over nvars or all variables."""
    if nvars is None:
        return InfMatrixSpec(
            row_generator=fs_row,
            support_bound=lambda n: (n + 1).bit_length(),
            name="fs",
            metadata={"segment_width": 1},
        )
    if nvars < 1:
        raise ValueError("nvars must be a positive integer")
    return InfMatrixSpec(
        row_generator=fs_row,
        support_bound=lambda n: nvars,
        name=f"fs-{nvars}",
        nrows_limit=2 ** nvars - 1,
        metadata={"segment_width": 1},
    )


def vdw_tower() -> InfMatrixSpec:
    """Row n = (1, n)."""
    return InfMatrixSpec(
        row_generator=lambda n: SparseRow.from_pairs([(0, 1), (1, n)]),
        support_bound=lambda n: 2,
        name="vdw-tower",
    )


def _schur_tower_row(n: int) -> SparseRow:
    block, position = divmod(n, 3)
    offset = 2 * block
    if position == 0:
        return SparseRow(((offset, ONE),))
    if position == 1:
        return SparseRow(((offset + 1, ONE),))
    return SparseRow(((offset, ONE), (offset + 1, ONE)))


def schur_tower() -> InfMatrixSpec:
    """Schur matrices down the diagonal, one per pair of columns."""
    return InfMatrixSpec(
        row_generator=_schur_tower_row,
        support_bound=lambda n: 2 * (n // 3) + 2,
        name="schur-tower",
        metadata={"segment_width": 2},
    )


def unit_triangular_family() -> InfMatrixSpec:
    """Row n has ones in columns 0..n."""
    return InfMatrixSpec(
        row_generator=lambda n: SparseRow(tuple((c, ONE) for c in range(n + 1))),
        support_bound=lambda n: n + 1,
        name="unit-triangular",
        metadata={"triangular": {"d": 1}},
    )


def rows_family(rows: Sequence[SparseRow]) -> InfMatrixSpec:
    """Explicit rows; the family ends after the last one."""
    rows = tuple(rows)
    if not rows:
        raise ValueError("rows family needs at least one row")
    return InfMatrixSpec(
        row_generator=lambda n: rows[n],
        name="rows",
        nrows_limit=len(rows),
    )


FAMILY_BUILDERS: Dict[str, Callable[..., InfMatrixSpec]] = {
    "identity": identity_family,
    "fs": fs_family,
    "vdw-tower": vdw_tower,
    "schur-tower": schur_tower,
    "unit-triangular": unit_triangular_family,
    "rows": rows_family,
}


def load_family(spec: Dict[str, Any]) -> InfMatrixSpec:
    """
    Build a family from its spec dict.

    Raises:
        ValueError: unknown family name or bad parameters
    """
    name = spec.get("family")
    if name not in FAMILY_CONFIGS or name not in FAMILY_BUILDERS:
        raise ValueError(f"unknown family {name!r}; known: {', '.join(FAMILY_CONFIGS)}")
    params = {key: value for key, value in spec.items() if key != "family"}
    try:
        return FAMILY_BUILDERS[name](**params)
    except TypeError as e:
        raise ValueError(f"bad parameters for family {name}: {e}") from None
