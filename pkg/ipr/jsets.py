"""
Bounded J-set membership checker.

A set is a J-set when every finite family F of sequences admits a in the
semigroup and a finite nonempty index set H with a + sum_{t in H} f(t) in
the set for every f in F. Here one family F is checked with a and |H|
bounded.
"""

import itertools
from dataclasses import dataclass
from typing import FrozenSet, Optional, Sequence, Tuple


@dataclass(frozen=True)
class JsetQuery:
    """
    target_set: integers the shifted sums must land in
    sequences: each a length-T tuple holding f(1), ..., f(T)
    """

    target_set: FrozenSet[int]
    sequences: Tuple[Tuple[int, ...], ...]
    a_max: int
    h_card_max: int

    def __post_init__(self):
        if self.a_max < 1 or self.h_card_max < 1:
            raise ValueError("a_max and h_card_max must be positive integers")
        lengths = {len(seq) for seq in self.sequences}
        if len(lengths) > 1:
            raise ValueError(f"sequences must share one length, got {sorted(lengths)}")
        if lengths and lengths.pop() < self.h_card_max:
            raise ValueError("sequences must be at least h_card_max long")

    @property
    def horizon(self) -> int:
        """T, the number of available indices (h_card_max when F is empty)."""
        return len(self.sequences[0]) if self.sequences else self.h_card_max

    @classmethod
    def build(cls, target_set: Sequence[int], sequences: Sequence[Sequence[int]],
              a_max: int, h_card_max: int) -> "JsetQuery":
        return cls(frozenset(target_set), tuple(tuple(seq) for seq in sequences),
                   a_max, h_card_max)


def jset_find(q: JsetQuery) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """
    Smallest (a, H) in (a, |H|, lexicographic H) order, H 1-based.
    """
    indices = range(1, q.horizon + 1)
    for a in range(1, q.a_max + 1):
        for size in range(1, q.h_card_max + 1):
            for H in itertools.combinations(indices, size):
                if all(a + sum(f[t - 1] for t in H) in q.target_set for f in q.sequences):
                    return a, H
    return None


def brute_force_jset(q: JsetQuery) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """All candidates collected, then the minimum taken; used to cross-check jset_find."""
    candidates = []
    for a in range(1, q.a_max + 1):
        for mask in range(1, 2 ** q.horizon):
            H = tuple(t + 1 for t in range(q.horizon) if mask >> t & 1)
            if len(H) > q.h_card_max:
                continue
            if all(a + sum(f[t - 1] for t in H) in q.target_set for f in q.sequences):
                candidates.append((a, len(H), H))
    if not candidates:
        return None
    a, _, H = min(candidates)
    return a, H
