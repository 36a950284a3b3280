"""
Tests for colorings, their enumeration and symmetry breaking.
"""

import itertools
import os
import sys
import unittest
from pathlib import Path

import pytest

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.append(str(project_root))

from ipr.coloring import (BudgetExceededError, Coloring, canonical_count, enumerate_colorings,
                          iter_counters, mono_check, total_colorings)


class TestColoring(unittest.TestCase):
    """The Coloring type"""

    def test_validation(self):
        with self.assertRaises(ValueError):
            Coloring(3, 2, (0, 1))
        with self.assertRaises(ValueError):
            Coloring(2, 2, (0, 2))
        with self.assertRaises(ValueError):
            Coloring(0, 2, ())

    def test_color_of_is_one_based(self):
        c = Coloring(3, 2, (1, 0, 1))
        self.assertEqual(c.color_of(1), 1)
        self.assertEqual(c.color_of(2), 0)
        with self.assertRaises(IndexError):
            c.color_of(0)

    def test_counter(self):
        c = Coloring(3, 2, (1, 0, 1))
        self.assertEqual(c.counter, 5)
        self.assertEqual(Coloring.from_counter(5, 3, 2), c)

    def test_canonical(self):
        c = Coloring(4, 3, (2, 2, 0, 1))
        self.assertFalse(c.is_canonical)
        self.assertEqual(c.canonical().colors, (0, 0, 1, 2))
        self.assertEqual(c.classes(), [[3], [4], [1, 2]])


class TestEnumeration(unittest.TestCase):
    """Streaming colorings in counter order"""

    def test_all_colorings(self):
        colorings = list(enumerate_colorings(3, 2))
        self.assertEqual(len(colorings), total_colorings(3, 2))
        self.assertEqual([c.counter for c in colorings], list(range(8)))

    def test_canonical_counts(self):
        self.assertEqual(canonical_count(3, 2), 4)
        self.assertEqual(canonical_count(4, 3), 14)
        self.assertEqual(canonical_count(1, 1), 1)

    def test_one_representative_per_orbit(self):
        for n in range(1, 5):
            for r in range(1, 4):
                orbits = {c.canonical() for c in enumerate_colorings(n, r)}
                broken = list(enumerate_colorings(n, r, symmetry_break=True))
                self.assertEqual(set(broken), orbits)
                self.assertEqual(len(broken), len(orbits))
                self.assertEqual(len(broken), canonical_count(n, r))

    def test_offsets_resume_in_order(self):
        for n, r in [(4, 2), (4, 3), (3, 3)]:
            for symmetry_break in (False, True):
                full = list(iter_counters(n, r, symmetry_break))
                for offset in range(total_colorings(n, r) + 1):
                    tail = list(iter_counters(n, r, symmetry_break, offset))
                    self.assertEqual(tail, [item for item in full if item[0] >= offset])

    def test_counter_ranges_partition(self):
        pieces = []
        for lo in range(0, 81, 10):
            pieces.extend(iter_counters(4, 3, True, lo, lo + 10))
        self.assertEqual(pieces, list(iter_counters(4, 3, True)))

    def test_budget(self):
        with self.assertRaises(BudgetExceededError):
            list(enumerate_colorings(10, 2, budget=100))
        self.assertEqual(len(list(enumerate_colorings(10, 2, offset=1000, budget=100))), 24)

    def test_budget_from_environment(self):
        self.mocker.patch.dict(os.environ, {"IPR_BUDGET": "10"})
        with self.assertRaises(BudgetExceededError):
            list(enumerate_colorings(4, 2))
        self.assertEqual(len(list(enumerate_colorings(3, 2))), 8)

    @pytest.fixture(autouse=True)
    def _inject_mocker(self, mocker):
        self.mocker = mocker


class TestMonoCheck(unittest.TestCase):
    """mono_check"""

    def setUp(self):
        self.c = Coloring(4, 2, (0, 1, 0, 1))

    def test_common_color(self):
        self.assertEqual(mono_check([1, 3], self.c), 0)
        self.assertEqual(mono_check([2, 4, 4], self.c), 1)

    def test_mixed_colors(self):
        self.assertIsNone(mono_check([1, 2], self.c))

    def test_outside_universe(self):
        self.assertIsNone(mono_check([0], self.c))
        self.assertIsNone(mono_check([5], self.c))

    def test_non_integer(self):
        from fractions import Fraction
        self.assertIsNone(mono_check([Fraction(3, 2)], self.c))

    def test_all_products_agree_with_definition(self):
        for values in itertools.product(range(0, 6), repeat=2):
            expected = None
            if all(1 <= v <= 4 for v in values):
                colors = {self.c.color_of(v) for v in values}
                expected = colors.pop() if len(colors) == 1 else None
            self.assertEqual(mono_check(values, self.c), expected)


if __name__ == '__main__':
    unittest.main()
