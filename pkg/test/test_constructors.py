"""
Tests for matrix constructors and their algebraic properties.
"""

import random
import sys
import unittest
from fractions import Fraction
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.append(str(project_root))

from ipr.coloring import Coloring, mono_check
from ipr.constructors import (InsertionPlan, block_diag, combine_diag, compress_profile, fs,
                              identity, insertion, scale_row_augment, schur, triangular_corner,
                              triangular_extension, uniform_witness, vdw)
from ipr.families import unit_triangular_family
from ipr.matrixcore import DimensionError, FinMatrix, SparseRow, corner, mat_apply, materialize
from ipr.search import find_witness

D_ROWS = [[1, 1, 0, 0], [5, 7, 0, 0], [2, 2, 0, 1], [2, 2, 3, 3], [10, 14, 0, 1], [10, 14, 3, 3]]


class TestStandardMatrices(unittest.TestCase):
    """schur, vdw, fs and identity"""

    def test_schur(self):
        self.assertEqual(schur().to_dense(), [[1, 0], [0, 1], [1, 1]])

    def test_vdw(self):
        self.assertEqual(vdw(3).to_dense(), [[1, 0], [1, 1], [1, 2]])
        with self.assertRaises(ValueError):
            vdw(1)

    def test_fs_order(self):
        self.assertEqual(fs(2), schur())
        self.assertEqual(fs(1).to_dense(), [[1]])
        self.assertEqual(fs(3).nrows, 7)
        with self.assertRaises(ValueError):
            fs(0)

    def test_fs_truncation_nests(self):
        for n in range(1, 5):
            for m in range(1, n + 1):
                self.assertEqual(corner(fs(n), 2 ** m - 1, m), fs(m))

    def test_identity(self):
        self.assertEqual(identity(2).to_dense(), [[1, 0], [0, 1]])


class TestInsertion(unittest.TestCase):
    """Insertion matrices"""

    def setUp(self):
        self.C = FinMatrix.from_dense([[1, 0], [2, 1]])
        self.B0 = FinMatrix.from_dense([[1, 1], [5, 7]])
        self.B1 = FinMatrix.from_dense([[0, 1], [3, 3]])

    def test_worked_example(self):
        D = insertion(InsertionPlan(self.C, (self.B0, self.B1)))
        self.assertEqual(D.shape, (6, 4))
        self.assertEqual(D.to_dense(), D_ROWS)

    def test_single_block(self):
        D = insertion(InsertionPlan(FinMatrix.from_dense([[1]]), (self.B0,)))
        self.assertEqual(D, self.B0)

    def test_zero_scaled_block_collapses(self):
        plan = InsertionPlan(FinMatrix.from_dense([[0, 1]]),
                             (FinMatrix.from_dense([[1], [2]]), FinMatrix.from_dense([[1]])))
        self.assertEqual(insertion(plan).to_dense(), [[0, 1]])

    def test_inner_count_mismatch(self):
        with self.assertRaises(DimensionError):
            InsertionPlan(self.C, (self.B0,))


class TestBlockDiag(unittest.TestCase):
    """Block diagonal sums"""

    def test_two_schur_blocks(self):
        A = block_diag([schur(), schur()])
        self.assertEqual(A.shape, (6, 4))
        self.assertEqual(A.to_dense()[4], [0, 0, 0, 1])

    def test_single_block(self):
        self.assertEqual(block_diag([vdw(3)]), vdw(3))

    def test_witness_concatenation(self):
        rng = random.Random(7)
        parts = [schur(), vdw(2)]
        A = block_diag(parts)
        same_color = 0
        for _ in range(100):
            c = Coloring(12, 2, tuple(rng.randint(0, 1) for _ in range(12)))
            witnesses = [find_witness(part, c, 6) for part in parts]
            if any(w is None for w in witnesses) or witnesses[0].color != witnesses[1].color:
                continue
            same_color += 1
            x = witnesses[0].x + witnesses[1].x
            self.assertEqual(mono_check(mat_apply(A, x), c), witnesses[0].color)
        self.assertGreater(same_color, 0)


class TestProfileCompression(unittest.TestCase):
    """compress_profile"""

    def test_single_profile(self):
        A = FinMatrix.from_dense([[1, 1, 1], [1, 1, 1]])
        self.assertEqual(compress_profile(A, 2, 3).to_dense(), [[1, 1, 1]])

    def test_two_profiles(self):
        A = FinMatrix.from_dense([[2, 1, 0, 0], [1, 1, 1, 0]])
        self.assertEqual(compress_profile(A, 2, 3).to_dense(), [[2, 1, 0], [1, 1, 1]])

    def test_row_sum_checked(self):
        with self.assertRaises(ValueError):
            compress_profile(schur(), 1, 1)

    def test_rows_sum_to_m(self):
        rng = random.Random(11)
        for _ in range(500):
            p, q = rng.randint(1, 5), rng.randint(2, 5)
            m = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
            rows = []
            for _ in range(p):
                head = [Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(q - 1)]
                rows.append(head + [m - sum(head)])
            A = FinMatrix.from_dense(rows)
            E = compress_profile(A, rng.randint(1, q), m)
            for row in E.rows:
                self.assertEqual(row.total(), m)


class TestCombineDiag(unittest.TestCase):
    """combine_diag"""

    def test_small(self):
        A = FinMatrix.from_dense([[1]])
        self.assertEqual(combine_diag(A, [2]).to_dense(), [[0, 2], [1, 0], [1, 2]])

    def test_schur(self):
        M = combine_diag(schur(), [1, 1, 1])
        self.assertEqual(M.shape, (9, 5))
        self.assertEqual(M.to_dense()[0], [0, 0, 1, 0, 0])

    def test_bad_diagonal(self):
        with self.assertRaises(DimensionError):
            combine_diag(schur(), [1, 1])
        with self.assertRaises(ValueError):
            combine_diag(schur(), [1, 0, 1])

    def test_image_decomposition(self):
        rng = random.Random(13)
        for _ in range(500):
            p, q = rng.randint(1, 4), rng.randint(1, 4)
            A = FinMatrix.from_dense([[rng.randint(-3, 3) for _ in range(q)] for _ in range(p)])
            bs = [rng.randint(1, 5) for _ in range(p)]
            x = [rng.randint(1, 9) for _ in range(q)]
            y = [rng.randint(1, 9) for _ in range(p)]

            image = mat_apply(combine_diag(A, bs), x + y)
            by = [b * v for b, v in zip(bs, y)]
            ax = mat_apply(A, x)
            self.assertEqual(image, by + ax + [a + b for a, b in zip(ax, by)])


class TestAugmentation(unittest.TestCase):
    """scale_row_augment and uniform_witness"""

    def test_augment(self):
        M = scale_row_augment(SparseRow.from_dense([1, 1]), 2, schur())
        self.assertEqual(M.to_dense(), [[2, 2], [1, 0], [0, 1], [1, 1]])

    def test_augment_scaling(self):
        r = SparseRow.from_dense([1, 3])
        scaled = scale_row_augment(r, Fraction(3, 2), schur()).rows[0]
        plain = scale_row_augment(r, 1, schur()).rows[0]
        self.assertEqual(scaled, plain.scale(Fraction(3, 2)))

    def test_augment_zero_scalar(self):
        with self.assertRaises(ValueError):
            scale_row_augment(SparseRow.from_dense([1]), 0, schur())

    def test_uniform_witness(self):
        w = uniform_witness(FinMatrix.from_dense([[1, 2], [3, 0]]), 2)
        self.assertEqual(w.x, (2, 2))
        self.assertEqual(w.image, (6, 6))

    def test_uniform_witness_rational_sum(self):
        w = uniform_witness(FinMatrix.from_dense([["1/2", 0]]), 2)
        self.assertEqual(w.image, (1,))

    def test_uniform_witness_needs_constant_sum(self):
        with self.assertRaises(ValueError):
            uniform_witness(vdw(4), 1)

    def test_uniform_witness_colored(self):
        c = Coloring(6, 2, (0, 0, 0, 0, 0, 1))
        w = uniform_witness(FinMatrix.from_dense([[1, 2], [3, 0]]), 2, c)
        self.assertEqual(w.color, 1)


class TestTriangularExtension(unittest.TestCase):
    """Corners and extensions of restricted triangular matrices"""

    def test_corner(self):
        A = materialize(unit_triangular_family(), 4)
        B = triangular_corner(A, (0, 1, 2, 3), 1)
        self.assertEqual(B.to_dense(), [[1, 0], [1, 1]])

    def test_extension(self):
        B = FinMatrix.from_dense([[1, 0], [1, 1]])
        M = triangular_extension(SparseRow.from_dense([1, 1]), 2, [1, 1], B)
        self.assertEqual(M.to_dense(), [[2, 2], [1, 0], [0, 1], [1, 0], [1, 1]])

    def test_extension_width(self):
        with self.assertRaises(DimensionError):
            triangular_extension(SparseRow.from_dense([1, 1, 1]), 1, [1, 1], identity(2))


if __name__ == '__main__':
    unittest.main()
