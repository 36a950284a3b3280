"""
Canonical matrix families and combinators, built exactly.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple

from .coloring import Coloring
from .matrixcore import (DimensionError, FinMatrix, SparseRow, constant_row_sum,
                         corner, pad_columns, to_rational)
from .search import Witness


@dataclass(frozen=True)
class InsertionPlan:
    """Outer matrix C (gamma x delta) and one inner matrix B_t per column of C."""

    outer: FinMatrix
    inner: Tuple[FinMatrix, ...]

    def __post_init__(self):
        if len(self.inner) != self.outer.ncols:
            raise DimensionError(
                f"insertion needs {self.outer.ncols} inner matrices, got {len(self.inner)}")
        for t, block in enumerate(self.inner):
            if block.nrows == 0:
                raise ValueError(f"inner matrix B_{t} has no rows")


def identity(n: int) -> FinMatrix:
    if n < 0:
        raise ValueError("identity size must be a natural number")
    return FinMatrix(n, n, tuple(SparseRow(((i, Fraction(1)),)) for i in range(n)))


def schur() -> FinMatrix:
    """x, y, x + y."""
    return FinMatrix.from_dense([[1, 0], [0, 1], [1, 1]])


def vdw(k: int) -> FinMatrix:
    """Rows (1, i) for i < k: a k-term arithmetic progression a, a+d, ..."""
    if k < 2:
        raise ValueError(f"progression length must be at least 2, got {k}")
    return FinMatrix.from_dense([[1, i] for i in range(k)])


def fs_row(index: int) -> SparseRow:
    """Row `index` of the finite sums matrix: the bits of index + 1."""
    value = index + 1
    return SparseRow(tuple((bit, Fraction(1)) for bit in range(value.bit_length())
                           if value >> bit & 1))


def fs(n: int) -> FinMatrix:
    """
    Finite sums matrix on n variables.

    Rows are ordered by binary counting (bit i = variable i), i.e. by the
    largest variable used and then by the remaining variables from the top,
    so the first 2^m - 1 rows are fs(m) padded with zero columns.
    """
    if n < 1:
        raise ValueError(f"finite sums matrix needs at least one variable, got {n}")
    return FinMatrix(2 ** n - 1, n, tuple(fs_row(i) for i in range(2 ** n - 1)))


def block_diag(matrices: Sequence[FinMatrix]) -> FinMatrix:
    if not matrices:
        raise ValueError("block_diag needs at least one matrix")
    rows: List[SparseRow] = []
    offset = 0
    for m in matrices:
        rows.extend(row.shift(offset) for row in m.rows)
        offset += m.ncols
    return FinMatrix(len(rows), offset, tuple(rows))


def insertion(plan: InsertionPlan) -> FinMatrix:
    """
    Insertion matrix of the inner matrices into the outer one.

    Rows run over i (outer row) first, then the choice vector j in
    lexicographic order with j(0) most significant; repeated rows keep their
    first occurrence.
    """
    C, inner = plan.outer, plan.inner
    offsets = list(itertools.accumulate([0] + [b.ncols for b in inner]))

    seen = {}
    for i in range(C.nrows):
        coefficients = [C.entry(i, t) for t in range(C.ncols)]
        for choice in itertools.product(*(range(b.nrows) for b in inner)):
            pairs = []
            for t, k in enumerate(choice):
                if coefficients[t] == 0:
                    continue
                pairs.extend((col + offsets[t], value * coefficients[t])
                             for col, value in inner[t].rows[k].entries)
            row = SparseRow(tuple(pairs))
            if row not in seen:
                seen[row] = None

    rows = tuple(seen)
    return FinMatrix(len(rows), offsets[-1], rows)


def _require_row_sum(A: FinMatrix, m: Fraction) -> None:
    for i, row in enumerate(A.rows):
        if row.total() != m:
            raise ValueError(f"row {i} sums to {row.total()}, expected {m}")


def compress_profile(A: FinMatrix, l: int, m: Any) -> FinMatrix:
    """
    Distinct profiles of columns 0..l-1, completed by d_i = m - sum.

    Profiles are taken in first-occurrence order; every output row sums to m.
    """
    m = to_rational(m)
    if l < 1:
        raise ValueError("profile length l must be at least 1")
    _require_row_sum(A, m)

    seen = {}
    for row in A.rows:
        profile = tuple(row.dense(l))
        if profile not in seen:
            seen[profile] = None

    rows = []
    for profile in seen:
        d = m - sum(profile, Fraction(0))
        rows.append(SparseRow.from_dense(list(profile) + [d]))
    return FinMatrix(len(rows), l + 1, tuple(rows))


def combine_diag(A: FinMatrix, bs: Sequence[int]) -> FinMatrix:
    """[[O, B], [A, O], [A, B]] with B = diag(bs)."""
    if len(bs) != A.nrows:
        raise DimensionError(f"need {A.nrows} diagonal entries, got {len(bs)}")
    for b in bs:
        if isinstance(b, bool) or not isinstance(b, int) or b < 1:
            raise ValueError(f"diagonal entries must be positive integers, got {b!r}")

    q = A.ncols
    diagonal = [SparseRow(((q + n, Fraction(b)),)) for n, b in enumerate(bs)]
    top = diagonal
    middle = list(A.rows)
    bottom = [SparseRow(row.entries + diag.entries) for row, diag in zip(A.rows, diagonal)]
    rows = tuple(top + middle + bottom)
    return FinMatrix(len(rows), q + A.nrows, rows)


def scale_row_augment(r: SparseRow, b: Any, A: FinMatrix) -> FinMatrix:
    """Matrix with first row b*r followed by the rows of A (A padded if r is wider)."""
    b = to_rational(b)
    if b == 0:
        raise ValueError("scalar b must be nonzero")
    width = max(A.ncols, r.width)
    A = pad_columns(A, width)
    return FinMatrix(A.nrows + 1, width, (r.scale(b),) + A.rows)


def uniform_witness(A: FinMatrix, d: int, coloring: Optional[Coloring] = None) -> Witness:
    """
    x = (d, ..., d) for a matrix with constant row sum m; the image is all d*m.

    With a coloring, the witness carries the color of d*m (which must then lie
    in the colored universe); otherwise the color is 0.
    """
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise ValueError(f"d must be a positive integer, got {d!r}")
    m = constant_row_sum(A)
    if m is None:
        raise ValueError("uniform witness needs a matrix with constant row sums")
    value = d * m
    if value.denominator != 1 or value <= 0:
        raise ValueError(f"d * m = {value} is not a positive integer")
    value = int(value)

    color = 0
    if coloring is not None:
        if value > coloring.n:
            raise ValueError(f"image value {value} lies outside the universe 1..{coloring.n}")
        color = coloring.color_of(value)
    return Witness(x=(d,) * A.ncols, image=(value,) * A.nrows, color=color)


def triangular_corner(A: FinMatrix, j: Sequence[int], l: int) -> FinMatrix:
    """
    Upper-left (gamma+1) x (l+1) corner with j(gamma) <= l < j(gamma+1).

    Args:
        A: Materialized prefix of a restricted triangular matrix
        j: Its pivot columns (from a TriCert)
        l: Column bound, at least j(0)
    """
    if not j or l < j[0]:
        raise ValueError("column bound l must be at least the first pivot column")
    if len(j) != A.nrows:
        raise DimensionError(f"need one pivot column per row, got {len(j)} for {A.nrows}")
    gamma = max(i for i, col in enumerate(j) if col <= l)
    return corner(A, gamma + 1, l + 1)


def triangular_extension(r: SparseRow, b: Any, bs: Sequence[Any], B: FinMatrix) -> FinMatrix:
    """
    Rows: b*r, then diag(b_0, ..., b_l), then B; l + 1 = len(bs) columns.

    The scalars are supplied by the caller.
    """
    b = to_rational(b)
    if b == 0:
        raise ValueError("scalar b must be nonzero")
    scalars = [to_rational(v) for v in bs]
    if any(v == 0 for v in scalars):
        raise ValueError("diagonal scalars must be nonzero")
    width = len(scalars)
    if r.width > width or B.ncols > width:
        raise DimensionError(f"row and corner must fit in {width} columns")
    rows = [r.scale(b)]
    rows.extend(SparseRow(((t, v),)) for t, v in enumerate(scalars))
    rows.extend(B.rows)
    return FinMatrix(len(rows), width, tuple(rows))
