"""
Tests for the bounded J-set checker.
"""

import random
import sys
import unittest
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.append(str(project_root))

from ipr.jsets import JsetQuery, brute_force_jset, jset_find


class TestJsetFind(unittest.TestCase):
    """jset_find"""

    def test_small_query(self):
        q = JsetQuery.build([3, 4, 5], [[1, 2]], a_max=3, h_card_max=1)
        self.assertEqual(jset_find(q), (1, (2,)))

    def test_all_sequences_must_land(self):
        q = JsetQuery.build([4, 6], [[1, 3], [3, 5]], a_max=3, h_card_max=2)
        self.assertEqual(jset_find(q), (1, (2,)))

    def test_no_solution(self):
        q = JsetQuery.build([100], [[1, 2, 3]], a_max=5, h_card_max=3)
        self.assertIsNone(jset_find(q))

    def test_empty_family(self):
        q = JsetQuery.build([7], [], a_max=2, h_card_max=2)
        self.assertEqual(q.horizon, 2)
        self.assertEqual(jset_find(q), (1, (1,)))

    def test_validation(self):
        with self.assertRaises(ValueError):
            JsetQuery.build([1], [[1]], a_max=0, h_card_max=1)
        with self.assertRaises(ValueError):
            JsetQuery.build([1], [[1, 2], [1]], a_max=1, h_card_max=1)
        with self.assertRaises(ValueError):
            JsetQuery.build([1], [[1]], a_max=1, h_card_max=2)

    def test_agrees_with_brute_force(self):
        rng = random.Random(23)
        for _ in range(200):
            T = rng.randint(1, 6)
            target = rng.sample(range(1, 41), rng.randint(1, 25))
            seqs = [[rng.randint(1, 8) for _ in range(T)] for _ in range(rng.randint(1, 3))]
            q = JsetQuery.build(target, seqs, a_max=rng.randint(1, 10),
                                h_card_max=rng.randint(1, min(3, T)))
            self.assertEqual(jset_find(q), brute_force_jset(q), (target, seqs))


if __name__ == '__main__':
    unittest.main()
