"""
Structural matrix classes with checkable certificates.

Each `is_*` / `detect_*` function returns a certificate or None, and each
certificate kind has a `verify_*` function that re-scans the matrix by the
plain definition, independent of the search that produced it.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Any, Dict, List, Optional, Tuple

from utils import setup_logger

from .matrixcore import (FinMatrix, InfMatrixSpec, SparseRow, column_block,
                         constant_row_sum, format_rational, materialize)

logger = setup_logger("ipr.classes")

BLOCK_EMPTY = "empty"
BLOCK_FIRST_ENTRIES = "first-entries"
BLOCK_UNVERIFIED = "unverified"


@dataclass(frozen=True)
class FirstEntriesCert:
    """First entries t_j, keyed by the columns that are first-nonzero somewhere."""
    t: Tuple[Tuple[int, Fraction], ...]

    def as_dict(self) -> Dict[int, Fraction]:
        return dict(self.t)


@dataclass(frozen=True)
class BlockClass:
    kind: str
    cert: Optional[FirstEntriesCert] = None


@dataclass(frozen=True)
class SegmentationCert:
    """Cut points alpha_0 = 0 < alpha_1 < ... < alpha_k = ncols and one class per block."""
    alphas: Tuple[int, ...]
    blocks: Tuple[BlockClass, ...]

    @property
    def is_strict(self) -> bool:
        return all(block.kind != BLOCK_UNVERIFIED for block in self.blocks)


@dataclass(frozen=True)
class TriCert:
    """Restricted triangular certificate: pivot bound d and pivot columns j(i)."""
    d: int
    j: Tuple[int, ...]


@dataclass(frozen=True)
class PivotCert:
    """Isolated pivot certificate: pivot bound d and one private column per row."""
    d: int
    j: Tuple[int, ...]


# ---------------------------------------------------------------- first entries

def is_first_entries(A: FinMatrix) -> Optional[FirstEntriesCert]:
    """First entries certificate, or None when A is not a first entries matrix."""
    t: Dict[int, Fraction] = {}
    for row in A.rows:
        if row.is_zero:
            return None
        col, value = row.entries[0]
        if value <= 0:
            return None
        if t.setdefault(col, value) != value:
            return None
    return FirstEntriesCert(tuple(sorted(t.items())))


def is_monic_first_entries(A: FinMatrix) -> bool:
    cert = is_first_entries(A)
    return cert is not None and all(value == 1 for _, value in cert.t)


def verify_first_entries_cert(A: FinMatrix, cert: FirstEntriesCert) -> bool:
    t = cert.as_dict()
    if any(value <= 0 for value in t.values()):
        return False
    leading = set()
    for row in A.rows:
        if row.is_zero:
            return False
        col = row.first_column
        if col not in t or row.get(col) != t[col]:
            return False
        leading.add(col)
    return leading == set(t)


# ---------------------------------------------------------------- segmentation

def _block_profiles(A: FinMatrix, lo: int, hi: int) -> FinMatrix:
    """Distinct nonzero row profiles of columns [lo, hi), first-occurrence order."""
    seen = {}
    for row in column_block(A, lo, hi).rows:
        if not row.is_zero and row not in seen:
            seen[row] = None
    return FinMatrix.from_rows(list(seen), ncols=hi - lo)


def _classify_block(A: FinMatrix, lo: int, hi: int, monic: bool) -> Optional[BlockClass]:
    profiles = _block_profiles(A, lo, hi)
    if profiles.nrows == 0:
        return BlockClass(BLOCK_EMPTY)
    cert = is_first_entries(profiles)
    if cert is None:
        return None
    if monic and any(value != 1 for _, value in cert.t):
        return None
    return BlockClass(BLOCK_FIRST_ENTRIES, cert)


def detect_segmentation(A: FinMatrix, monic: bool = False,
                        allow_unverified: bool = False) -> Optional[SegmentationCert]:
    """
    Find cut points making every column block empty or first-entries.

    Cuts are tried smallest first; when the greedy path dead-ends the search
    backtracks, remembering positions known to be dead. The certificate
    returned is the lexicographically first valid cut sequence.

    Args:
        A: Finite matrix (or materialized prefix) with no zero rows
        monic: Require every block's first entries to equal 1
        allow_unverified: If no strict certificate exists, return a greedy one
            whose stuck tail is a single block labeled unverified

    Raises:
        ValueError: A has a zero row
    """
    if any(row.is_zero for row in A.rows):
        raise ValueError("segmentation is undefined for matrices with a zero row")

    q = A.ncols
    if q == 0:
        return SegmentationCert((0,), ())

    dead = set()
    backtracked = [False]

    def extend(lo: int) -> Optional[List[Tuple[int, BlockClass]]]:
        if lo == q:
            return []
        if lo in dead:
            return None
        for hi in range(lo + 1, q + 1):
            block = _classify_block(A, lo, hi, monic)
            if block is None:
                continue
            rest = extend(hi)
            if rest is not None:
                return [(hi, block)] + rest
            backtracked[0] = True
        dead.add(lo)
        return None

    path = extend(0)
    if backtracked[0]:
        logger.debug("segmentation search backtracked past the greedy path")
    if path is not None:
        alphas = (0,) + tuple(hi for hi, _ in path)
        return SegmentationCert(alphas, tuple(block for _, block in path))

    if not allow_unverified:
        return None

    # Greedy cuts while possible, then one unverified block to the end
    alphas = [0]
    blocks = []
    lo = 0
    while lo < q:
        for hi in range(lo + 1, q + 1):
            block = _classify_block(A, lo, hi, monic)
            if block is not None:
                alphas.append(hi)
                blocks.append(block)
                lo = hi
                break
        else:
            alphas.append(q)
            blocks.append(BlockClass(BLOCK_UNVERIFIED))
            lo = q
    return SegmentationCert(tuple(alphas), tuple(blocks))


def verify_segmentation_cert(A: FinMatrix, cert: SegmentationCert) -> bool:
    alphas = cert.alphas
    if not alphas or alphas[0] != 0 or alphas[-1] != A.ncols:
        return False
    if any(b <= a for a, b in zip(alphas, alphas[1:])):
        return False
    if len(cert.blocks) != len(alphas) - 1:
        return False
    if any(row.is_zero for row in A.rows):
        return False
    for (lo, hi), block in zip(zip(alphas, alphas[1:]), cert.blocks):
        profiles = _block_profiles(A, lo, hi)
        if block.kind == BLOCK_EMPTY:
            if profiles.nrows:
                return False
        elif block.kind == BLOCK_FIRST_ENTRIES:
            if block.cert is None or not verify_first_entries_cert(profiles, block.cert):
                return False
        elif block.kind == BLOCK_UNVERIFIED:
            if profiles.nrows == 0:
                return False
        else:
            return False
    return True


def is_monic_segmentation(cert: SegmentationCert) -> bool:
    return cert.is_strict and all(
        value == 1 for block in cert.blocks if block.cert for _, value in block.cert.t)


# ---------------------------------------------------------------- triangular

def _require_integral(A: FinMatrix) -> None:
    if not A.is_integral():
        raise ValueError("triangular classes are defined for integer matrices only")


def _pivot_columns(A: FinMatrix) -> Optional[Tuple[int, ...]]:
    """j(i) = last nonzero column of row i; anything right of it must be zero."""
    j = []
    for row in A.rows:
        if row.is_zero:
            return None
        j.append(row.last_column)
    return tuple(j)


def is_restricted_triangular(A: FinMatrix, d_max: int) -> Optional[TriCert]:
    """
    Smallest d <= d_max with an increasing pivot function j.

    Zeros to the right of the pivot force j(i) to be the last nonzero column,
    so only d is searched.

    Raises:
        ValueError: A has a non-integer entry or d_max < 1
    """
    if d_max < 1:
        raise ValueError("d_max must be a positive integer")
    _require_integral(A)

    j = _pivot_columns(A)
    if j is None:
        return None
    if any(b <= a for a, b in zip(j, j[1:])):
        return None

    for d in range(1, d_max + 1):
        if _triangular_holds(A, d, j):
            return TriCert(d, j)
    return None


def _triangular_holds(A: FinMatrix, d: int, j: Tuple[int, ...]) -> bool:
    step = lcm(*range(1, d + 1))
    for i, row in enumerate(A.rows):
        pivot = row.get(j[i])
        if not (1 <= pivot <= d) or pivot.denominator != 1:
            return False
        if row.last_column != j[i]:
            return False
        for later in A.rows[i + 1:]:
            if later.get(j[i]).numerator % step:
                return False
    return True


def verify_triangular_cert(A: FinMatrix, cert: TriCert) -> bool:
    if cert.d < 1 or len(cert.j) != A.nrows or not A.is_integral():
        return False
    if any(b <= a for a, b in zip(cert.j, cert.j[1:])):
        return False
    for i, row in enumerate(A.rows):
        if cert.j[i] >= A.ncols or not 1 <= row.get(cert.j[i]) <= cert.d:
            return False
        if any(col > cert.j[i] for col in row.support):
            return False
        for k in range(i + 1, A.nrows):
            entry = A.entry(k, cert.j[i]).numerator
            if any(entry % t for t in range(1, cert.d + 1)):
                return False
    return True


def is_unit_triangular(A: FinMatrix) -> Optional[TriCert]:
    """Pivots all 1 with zeros to their right (restricted triangular, d = 1)."""
    return is_restricted_triangular(A, 1)


def is_isolated_pivot(A: FinMatrix, d_max: int) -> Optional[PivotCert]:
    """
    Each row owns a column where it is the only nonzero entry, valued in 1..d.

    Per row the private column with the smallest value (then smallest index)
    is taken, which gives the smallest d.

    Raises:
        ValueError: A has a non-integer entry or d_max < 1
    """
    if d_max < 1:
        raise ValueError("d_max must be a positive integer")
    _require_integral(A)

    column_count = [0] * A.ncols
    for row in A.rows:
        for col in row.support:
            column_count[col] += 1

    j = []
    d = 1
    for row in A.rows:
        candidates = [(value, col) for col, value in row.entries
                      if column_count[col] == 1 and 1 <= value <= d_max]
        if not candidates:
            return None
        value, col = min(candidates)
        j.append(col)
        d = max(d, int(value))
    return PivotCert(d, tuple(j))


def verify_pivot_cert(A: FinMatrix, cert: PivotCert) -> bool:
    if cert.d < 1 or len(cert.j) != A.nrows or not A.is_integral():
        return False
    for i, row in enumerate(A.rows):
        if cert.j[i] >= A.ncols or not 1 <= row.get(cert.j[i]) <= cert.d:
            return False
        for k in range(A.nrows):
            if k != i and A.entry(k, cert.j[i]) != 0:
                return False
    return True


# ---------------------------------------------------------------- infinite probes

def finite_support_condition(S: InfMatrixSpec, k: int, n_probe: int) -> int:
    """Rows among the first n_probe whose support lies inside columns [0, k)."""
    return sum(1 for i in range(n_probe) if S.row(i).width <= k)


def profile_count(S: InfMatrixSpec, l: int, n_probe: int) -> int:
    """Distinct profiles <a_{i,0}, ..., a_{i,l}> over the first n_probe rows."""
    return len({S.row(i).restrict(0, l + 1) for i in range(n_probe)})


def has_repeated_rows(A: FinMatrix) -> bool:
    return len(set(A.rows)) != A.nrows


# ---------------------------------------------------------------- report

def _cert_t(cert: FirstEntriesCert) -> Dict[str, str]:
    return {str(col): format_rational(value) for col, value in cert.t}


def certificate_to_dict(cert: Any) -> Dict[str, Any]:
    """JSON-ready form of any certificate."""
    if isinstance(cert, FirstEntriesCert):
        return {"kind": "first_entries", "t": _cert_t(cert)}
    if isinstance(cert, SegmentationCert):
        return {
            "kind": "segmentation",
            "alphas": list(cert.alphas),
            "blocks": [
                {"class": block.kind, "t": _cert_t(block.cert) if block.cert else None}
                for block in cert.blocks
            ],
        }
    if isinstance(cert, TriCert):
        return {"kind": "restricted_triangular", "d": cert.d, "j": list(cert.j)}
    if isinstance(cert, PivotCert):
        return {"kind": "isolated_pivot", "d": cert.d, "j": list(cert.j)}
    raise TypeError(f"not a certificate: {type(cert).__name__}")


def verify_certificate(A: FinMatrix, cert: Any) -> bool:
    """Dispatch to the matching definition re-scan."""
    if isinstance(cert, FirstEntriesCert):
        return verify_first_entries_cert(A, cert)
    if isinstance(cert, SegmentationCert):
        return verify_segmentation_cert(A, cert)
    if isinstance(cert, TriCert):
        return verify_triangular_cert(A, cert)
    if isinstance(cert, PivotCert):
        return verify_pivot_cert(A, cert)
    raise TypeError(f"not a certificate: {type(cert).__name__}")


def classify(A: FinMatrix, d_max: int = 4) -> Dict[str, Any]:
    """All class predicates of A as one JSON-ready report."""
    zero_rows = [i for i, row in enumerate(A.rows) if row.is_zero]
    report: Dict[str, Any] = {
        "nrows": A.nrows,
        "ncols": A.ncols,
        "zero_rows": zero_rows,
        "repeated_rows": has_repeated_rows(A),
        "integral": A.is_integral(),
    }

    m = constant_row_sum(A)
    report["constant_row_sum"] = format_rational(m) if m is not None else None

    fe = is_first_entries(A)
    report["first_entries"] = certificate_to_dict(fe) if fe else None
    report["monic"] = is_monic_first_entries(A)

    if zero_rows:
        report["segmentation"] = None
        report["monic_segmentation"] = None
    else:
        seg = detect_segmentation(A)
        monic_seg = detect_segmentation(A, monic=True)
        report["segmentation"] = certificate_to_dict(seg) if seg else None
        report["monic_segmentation"] = certificate_to_dict(monic_seg) if monic_seg else None

    if A.is_integral():
        tri = is_restricted_triangular(A, d_max)
        pivot = is_isolated_pivot(A, d_max)
        report["restricted_triangular"] = certificate_to_dict(tri) if tri else None
        report["unit_triangular"] = tri is not None and tri.d == 1
        report["isolated_pivot"] = certificate_to_dict(pivot) if pivot else None
    else:
        report["restricted_triangular"] = None
        report["unit_triangular"] = False
        report["isolated_pivot"] = None

    return report


def collect_certificates(A: FinMatrix, d_max: int = 4) -> List[Any]:
    """Every certificate classify would report, as objects."""
    certs: List[Any] = []
    fe = is_first_entries(A)
    if fe:
        certs.append(fe)
    if not any(row.is_zero for row in A.rows):
        seg = detect_segmentation(A)
        if seg:
            certs.append(seg)
    if A.is_integral():
        for cert in (is_restricted_triangular(A, d_max), is_isolated_pivot(A, d_max)):
            if cert:
                certs.append(cert)
    return certs


def declared_certificates(S: InfMatrixSpec, n: int) -> List[Any]:
    """
    Certificates an infinite family declares in its metadata, built for its
    first n rows and re-checked there.

    Metadata keys read:
        segment_width: cut every segment_width columns, each block first-entries
        triangular: {"d": d}, restricted triangular with pivot bound d

    Raises:
        ValueError: The prefix does not satisfy what the metadata declares
    """
    A = materialize(S, n)
    certs: List[Any] = []

    width = S.metadata.get("segment_width")
    if width:
        alphas = tuple(range(0, A.ncols, width)) + (A.ncols,)
        blocks = []
        for lo, hi in zip(alphas, alphas[1:]):
            block = _classify_block(A, lo, hi, monic=False)
            if block is None:
                raise ValueError(f"family {S.name}: columns [{lo}, {hi}) of the first "
                                 f"{n} rows are not first-entries")
            blocks.append(block)
        certs.append(SegmentationCert(alphas, tuple(blocks)))

    triangular = S.metadata.get("triangular")
    if triangular:
        j = _pivot_columns(A)
        if j is None:
            raise ValueError(f"family {S.name}: zero row among the first {n} rows")
        certs.append(TriCert(int(triangular["d"]), j))

    for cert in certs:
        if not verify_certificate(A, cert):
            raise ValueError(f"family {S.name}: declared {certificate_to_dict(cert)['kind']} "
                             f"does not hold on the first {n} rows")
    logger.debug(f"{S.name}: {len(certs)} declared certificates hold on {n} rows")
    return certs
