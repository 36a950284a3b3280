"""
Finite colorings of [1..N] and their enumeration.

A coloring is read as a base-r counter with the color of 1 as the most
significant digit; enumeration walks counters upward from an offset, so any
counter range can be handed to a separate worker. With symmetry breaking
only canonical colorings (colors first appear in the order 0, 1, 2, ...)
are produced: one per orbit under permuting the colors.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator, List, Optional, Sequence, Tuple

from config.settings import get_settings


class BudgetExceededError(RuntimeError):
    """Raised when an enumeration would walk more colorings than allowed."""


@dataclass(frozen=True)
class Coloring:
    """Total map [1..n] -> {0..r-1}; integer i is stored at index i-1."""

    n: int
    r: int
    colors: Tuple[int, ...]

    def __post_init__(self):
        if self.n < 1 or self.r < 1:
            raise ValueError("coloring needs n >= 1 and r >= 1")
        if len(self.colors) != self.n:
            raise ValueError(f"expected {self.n} colors, got {len(self.colors)}")
        for i, color in enumerate(self.colors):
            if isinstance(color, bool) or not isinstance(color, int) or not 0 <= color < self.r:
                raise ValueError(f"color of {i + 1} is {color!r}, must be in 0..{self.r - 1}")

    def color_of(self, value: int) -> int:
        if not 1 <= value <= self.n:
            raise IndexError(f"{value} is outside the universe 1..{self.n}")
        return self.colors[value - 1]

    @property
    def counter(self) -> int:
        return digits_to_counter(self.colors, self.r)

    @property
    def is_canonical(self) -> bool:
        return _is_canonical(self.colors)

    @classmethod
    def from_counter(cls, counter: int, n: int, r: int) -> "Coloring":
        return cls(n, r, tuple(counter_to_digits(counter, n, r)))

    def canonical(self) -> "Coloring":
        """Representative of this coloring's orbit under color permutation."""
        relabel = {}
        for color in self.colors:
            relabel.setdefault(color, len(relabel))
        return Coloring(self.n, self.r, tuple(relabel[c] for c in self.colors))

    def classes(self) -> List[List[int]]:
        """Color classes as sorted lists of integers."""
        out: List[List[int]] = [[] for _ in range(self.r)]
        for i, color in enumerate(self.colors, start=1):
            out[color].append(i)
        return out


def digits_to_counter(digits: Sequence[int], r: int) -> int:
    value = 0
    for digit in digits:
        value = value * r + digit
    return value


def counter_to_digits(counter: int, n: int, r: int) -> List[int]:
    if not 0 <= counter < r ** n:
        raise ValueError(f"counter {counter} out of range for {r}^{n} colorings")
    digits = [0] * n
    for i in range(n - 1, -1, -1):
        counter, digits[i] = divmod(counter, r)
    return digits


def _is_canonical(digits: Sequence[int]) -> bool:
    highest = -1
    for digit in digits:
        if digit > highest + 1:
            return False
        highest = max(highest, digit)
    return True


def _next_plain(digits: List[int], r: int) -> Optional[List[int]]:
    for i in range(len(digits) - 1, -1, -1):
        if digits[i] < r - 1:
            digits[i] += 1
            digits[i + 1:] = [0] * (len(digits) - i - 1)
            return digits
    return None


def _next_canonical(digits: List[int], r: int) -> Optional[List[int]]:
    prefix_max = [-1] * len(digits)
    highest = -1
    for i, digit in enumerate(digits):
        prefix_max[i] = highest
        highest = max(highest, digit)
    for i in range(len(digits) - 1, 0, -1):
        if digits[i] < min(prefix_max[i] + 1, r - 1):
            digits[i] += 1
            digits[i + 1:] = [0] * (len(digits) - i - 1)
            return digits
    return None


def _seek_canonical(digits: List[int], r: int) -> Optional[List[int]]:
    """Smallest canonical digit string >= digits (lexicographic)."""
    highest = -1
    for i, digit in enumerate(digits):
        if digit > highest + 1:
            # No canonical string shares digits[:i+1]; jump past the largest one sharing digits[:i]
            for k in range(i, len(digits)):
                digits[k] = min(highest + 1, r - 1)
                highest = max(highest, digits[k])
            return _next_canonical(digits, r)
        highest = max(highest, digit)
    return digits


def total_colorings(n: int, r: int) -> int:
    return r ** n


def canonical_count(n: int, r: int) -> int:
    """Number of canonical colorings: sum of Stirling numbers S(n, k), k <= r."""
    row = [1]  # S(0, k)
    for size in range(1, n + 1):
        new = [0] * (size + 1)
        for k in range(1, size + 1):
            new[k] = k * (row[k] if k < len(row) else 0) + row[k - 1]
        row = new
    return sum(row[1:r + 1])


def iter_counters(n: int, r: int, symmetry_break: bool = False,
                  offset: int = 0, stop: Optional[int] = None) -> Iterator[Tuple[int, Tuple[int, ...]]]:
    """(counter, colors) pairs for counters in [offset, stop), ascending."""
    total = total_colorings(n, r)
    stop = total if stop is None else min(stop, total)
    if offset >= stop:
        return

    digits: Optional[List[int]] = counter_to_digits(offset, n, r)
    if symmetry_break:
        digits = _seek_canonical(digits, r)
    advance = _next_canonical if symmetry_break else _next_plain

    while digits is not None:
        counter = digits_to_counter(digits, r)
        if counter >= stop:
            break
        yield counter, tuple(digits)
        digits = advance(digits, r)


def enumerate_colorings(n: int, r: int, symmetry_break: bool = False,
                        offset: int = 0, stop: Optional[int] = None,
                        budget: Optional[int] = None) -> Iterator[Coloring]:
    """
    Stream colorings of [1..n] with r colors in counter order.

    Args:
        n: Universe size
        r: Number of colors
        symmetry_break: Only canonical representatives
        offset: First counter to consider (resume point)
        stop: Counter bound, exclusive (None for r^n)
        budget: Largest counter span allowed (None for the configured budget)

    Raises:
        BudgetExceededError: The counter span exceeds the budget
    """
    if n < 1 or r < 1:
        raise ValueError("enumeration needs n >= 1 and r >= 1")
    if budget is None:
        budget = get_settings().BUDGET
    end = total_colorings(n, r) if stop is None else min(stop, total_colorings(n, r))
    if end - offset > budget:
        raise BudgetExceededError(
            f"{end - offset} colorings to walk, budget is {budget}")
    for _, colors in iter_counters(n, r, symmetry_break, offset, end):
        yield Coloring(n, r, colors)


def mono_check(values: Sequence[Any], c: Coloring) -> Optional[int]:
    """Common color of the values, if all are integers in 1..n sharing one color."""
    common = None
    for value in values:
        value = Fraction(value)
        if value.denominator != 1 or not 1 <= value <= c.n:
            return None
        color = c.colors[int(value) - 1]
        if common is None:
            common = color
        elif color != common:
            return None
    return common
