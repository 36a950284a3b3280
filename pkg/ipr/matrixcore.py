"""
Exact rational matrices for image partition regularity experiments.

Rationals are `fractions.Fraction` (canonical form, arbitrary precision).
Rows are sparse and immutable; finite matrices are tuples of rows; infinite
matrices are lazy row generators that can be materialized into a prefix.
All indices are 0-based.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

Rational = Fraction
Number = Union[int, Fraction]


class DimensionError(ValueError):
    """Raised when vector or matrix shapes do not fit together."""


class SupportBoundError(ValueError):
    """Raised when a generated row leaves its declared column bound."""


def to_rational(value: Any) -> Fraction:
    """
    Convert an int, Fraction or canonical string to a Fraction.

    Floats and booleans are refused so no inexact value slips in.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"inexact or boolean value not allowed: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def parse_rational(text: str) -> Fraction:
    """Parse "p", "-p" or "p/q" (q nonzero) into a Fraction."""
    cleaned = text.strip()
    if not cleaned:
        raise ValueError("empty rational")
    numerator, sep, denominator = cleaned.partition("/")
    try:
        num = int(numerator)
        den = int(denominator) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational of the form p or p/q: {text!r}") from None
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(value: Fraction) -> str:
    """Canonical text: "3", "-1/2"."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class SparseRow:
    """Finitely supported row: strictly increasing columns, no stored zeros."""

    entries: Tuple[Tuple[int, Fraction], ...] = ()

    def __post_init__(self):
        previous = -1
        for col, value in self.entries:
            if not isinstance(col, int) or col < 0:
                raise ValueError(f"column index must be a natural number, got {col!r}")
            if col <= previous:
                raise ValueError("column indices must be strictly increasing")
            if not isinstance(value, Fraction):
                raise TypeError("row values must be Fractions")
            if value == 0:
                raise ValueError(f"stored zero at column {col}")
            previous = col

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[int, Any]]) -> "SparseRow":
        """Build from (column, value) pairs in any order; zeros dropped, repeats summed."""
        accumulated: Dict[int, Fraction] = {}
        for col, value in pairs:
            accumulated[col] = accumulated.get(col, Fraction(0)) + to_rational(value)
        return cls(tuple((col, accumulated[col])
                         for col in sorted(accumulated) if accumulated[col] != 0))

    @classmethod
    def from_dense(cls, values: Sequence[Any]) -> "SparseRow":
        return cls.from_pairs(enumerate(values))

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(col for col, _ in self.entries)

    @property
    def is_zero(self) -> bool:
        return not self.entries

    @property
    def first_column(self) -> Optional[int]:
        return self.entries[0][0] if self.entries else None

    @property
    def last_column(self) -> Optional[int]:
        return self.entries[-1][0] if self.entries else None

    @property
    def width(self) -> int:
        """Smallest column count that holds this row."""
        return self.entries[-1][0] + 1 if self.entries else 0

    def get(self, col: int) -> Fraction:
        for c, value in self.entries:
            if c == col:
                return value
            if c > col:
                break
        return Fraction(0)

    def dense(self, length: int) -> List[Fraction]:
        out = [Fraction(0)] * length
        for col, value in self.entries:
            if col < length:
                out[col] = value
        return out

    def scale(self, factor: Any) -> "SparseRow":
        factor = to_rational(factor)
        if factor == 0:
            return SparseRow()
        return SparseRow(tuple((col, value * factor) for col, value in self.entries))

    def shift(self, offset: int) -> "SparseRow":
        return SparseRow(tuple((col + offset, value) for col, value in self.entries))

    def restrict(self, lo: int, hi: int) -> "SparseRow":
        """Entries with lo <= column < hi, re-indexed to start at 0."""
        return SparseRow(tuple((col - lo, value) for col, value in self.entries
                               if lo <= col < hi))

    def total(self) -> Fraction:
        return sum((value for _, value in self.entries), Fraction(0))

    def dot(self, x: Sequence[Fraction]) -> Fraction:
        return sum((value * x[col] for col, value in self.entries), Fraction(0))


@dataclass(frozen=True)
class FinMatrix:
    """p x q matrix of rationals stored as sparse rows."""

    nrows: int
    ncols: int
    rows: Tuple[SparseRow, ...]

    def __post_init__(self):
        if self.nrows < 0 or self.ncols < 0:
            raise DimensionError("matrix dimensions must be natural numbers")
        if len(self.rows) != self.nrows:
            raise DimensionError(f"expected {self.nrows} rows, got {len(self.rows)}")
        for i, row in enumerate(self.rows):
            if row.width > self.ncols:
                raise DimensionError(
                    f"row {i} uses column {row.width - 1} but matrix has {self.ncols} columns")

    @classmethod
    def from_rows(cls, rows: Sequence[SparseRow], ncols: Optional[int] = None) -> "FinMatrix":
        rows = tuple(rows)
        width = max((row.width for row in rows), default=0)
        return cls(len(rows), width if ncols is None else ncols, rows)

    @classmethod
    def from_dense(cls, values: Sequence[Sequence[Any]], ncols: Optional[int] = None) -> "FinMatrix":
        if ncols is None:
            ncols = len(values[0]) if values else 0
        for i, row in enumerate(values):
            if len(row) != ncols:
                raise DimensionError(f"dense row {i} has length {len(row)}, expected {ncols}")
        return cls(len(values), ncols, tuple(SparseRow.from_dense(row) for row in values))

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def row(self, i: int) -> SparseRow:
        return self.rows[i]

    def to_dense(self) -> List[List[Fraction]]:
        return [row.dense(self.ncols) for row in self.rows]

    def entry(self, i: int, j: int) -> Fraction:
        return self.rows[i].get(j)

    def is_integral(self) -> bool:
        return all(value.denominator == 1 for row in self.rows for _, value in row.entries)

    def __str__(self) -> str:
        lines = [" ".join(format_rational(v) for v in row) for row in self.to_dense()]
        return "\n".join(lines) if lines else f"<empty {self.nrows}x{self.ncols}>"


@dataclass(frozen=True)
class InfMatrixSpec:
    """
    Lazily generated omega x omega matrix.

    `row_generator` must be pure. `support_bound(n)` (optional) is a column
    bound for row n. `nrows_limit` marks families with finitely many rows.
    """

    row_generator: Callable[[int], SparseRow]
    support_bound: Optional[Callable[[int], int]] = None
    metadata: Dict[str, Any] = field(default_factory=dict)
    name: str = "custom"
    nrows_limit: Optional[int] = None

    def row(self, n: int) -> SparseRow:
        if n < 0:
            raise IndexError("row index must be a natural number")
        if self.nrows_limit is not None and n >= self.nrows_limit:
            raise IndexError(f"family {self.name} has only {self.nrows_limit} rows")
        row = self.row_generator(n)
        if not isinstance(row, SparseRow):
            raise TypeError(f"row generator of {self.name} returned {type(row).__name__}")
        if self.support_bound is not None and row.width > self.support_bound(n):
            raise SupportBoundError(
                f"row {n} of {self.name} reaches column {row.width - 1}, "
                f"declared bound is {self.support_bound(n)}")
        return row


def mat_apply(A: FinMatrix, x: Sequence[Any]) -> List[Fraction]:
    """Image vector A x, computed exactly."""
    if len(x) != A.ncols:
        raise DimensionError(f"vector has length {len(x)}, matrix has {A.ncols} columns")
    vector = [to_rational(v) for v in x]
    return [row.dot(vector) for row in A.rows]


def materialize(S: InfMatrixSpec, n: int) -> FinMatrix:
    """First n rows of an infinite matrix as a FinMatrix."""
    if n < 1:
        raise ValueError("materialize needs n >= 1")
    rows = tuple(S.row(i) for i in range(n))
    if S.support_bound is not None:
        ncols = max(S.support_bound(i) for i in range(n))
    else:
        ncols = max(row.width for row in rows)
    return FinMatrix(n, ncols, rows)


def row_profile(A: FinMatrix, i: int, l: int) -> List[Fraction]:
    """Dense initial segment of row i through column l (length l+1)."""
    if not 0 <= i < A.nrows:
        raise IndexError(f"row {i} out of range for {A.nrows} rows")
    if l < 0:
        raise ValueError("profile length must be a natural number")
    return A.rows[i].dense(l + 1)


def pad_columns(A: FinMatrix, ncols: int) -> FinMatrix:
    if ncols < A.ncols:
        raise DimensionError(f"cannot pad {A.ncols} columns down to {ncols}")
    return FinMatrix(A.nrows, ncols, A.rows)


def vstack(*matrices: FinMatrix) -> FinMatrix:
    """Stack rows, padding every matrix to the widest column count."""
    width = max((m.ncols for m in matrices), default=0)
    rows = tuple(row for m in matrices for row in m.rows)
    return FinMatrix(len(rows), width, rows)


def column_block(A: FinMatrix, lo: int, hi: int) -> FinMatrix:
    """Columns [lo, hi) of A, re-indexed from 0."""
    if not 0 <= lo <= hi:
        raise DimensionError(f"bad column block [{lo}, {hi})")
    return FinMatrix(A.nrows, hi - lo, tuple(row.restrict(lo, hi) for row in A.rows))


def corner(A: FinMatrix, nrows: int, ncols: int) -> FinMatrix:
    """Upper-left nrows x ncols corner."""
    if not (0 <= nrows <= A.nrows and 0 <= ncols):
        raise DimensionError(f"corner {nrows}x{ncols} does not fit a {A.nrows}x{A.ncols} matrix")
    return FinMatrix(nrows, ncols, tuple(row.restrict(0, ncols) for row in A.rows[:nrows]))


def row_sums(A: FinMatrix) -> List[Fraction]:
    return [row.total() for row in A.rows]


def constant_row_sum(A: FinMatrix) -> Optional[Fraction]:
    """The common row sum m, or None if rows disagree (or there are none)."""
    sums = set(row_sums(A))
    if len(sums) != 1:
        return None
    return sums.pop()
