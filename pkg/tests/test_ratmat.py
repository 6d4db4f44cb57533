"""Exact matrix core: rank, inverse, assembly, p/q serialization.

The rank routine is the keystone of the whole package, so it is checked
against an independent brute-force oracle (largest non-vanishing minor,
exact determinants by Laplace expansion) rather than against itself.
"""

from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from sdoflab.errors import DimensionMismatch, SingularMatrix
from sdoflab.ratmat import (
    RationalMatrix,
    block_diag,
    format_fraction,
    hconcat,
    matrix_from_strings,
    parse_fraction,
)


def _det(a):
    n = len(a)
    if n == 1:
        return a[0][0]
    total = Fraction(0)
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in a[1:]]
        term = a[0][j] * _det(minor)
        total += term if j % 2 == 0 else -term
    return total


def brute_rank(m: RationalMatrix) -> int:
    """Independent oracle: size of the largest non-vanishing minor."""
    best = 0
    for k in range(1, min(m.rows, m.cols) + 1):
        found = False
        for rows in combinations(range(m.rows), k):
            for cols in combinations(range(m.cols), k):
                sub = [[m.entry(i, j) for j in cols] for i in rows]
                if _det(sub) != 0:
                    found = True
                    break
            if found:
                break
        if not found:
            break
        best = k
    return best


def random_matrix(rng, rows, cols, denom=50):
    return RationalMatrix(
        [
            [Fraction(int(rng.integers(-denom, denom + 1)), denom) for _ in range(cols)]
            for _ in range(rows)
        ],
        cols=cols,
    )


class TestRank:
    def test_identity(self):
        assert RationalMatrix.identity(3).rank() == 3

    def test_zero(self):
        assert RationalMatrix.zeros(2, 2).rank() == 0

    def test_dependent_rows(self):
        assert RationalMatrix([[1, 2], [2, 4]]).rank() == 1

    def test_empty_shapes(self):
        assert RationalMatrix([], cols=3).rank() == 0
        assert RationalMatrix([[], []], cols=0).rank() == 0

    @pytest.mark.parametrize("seed", range(20))
    def test_against_brute_force_oracle(self, seed):
        rng = np.random.default_rng(seed)
        rows, cols = int(rng.integers(1, 5)), int(rng.integers(1, 6))
        m = random_matrix(rng, rows, cols)
        assert m.rank() == brute_rank(m)

    @pytest.mark.parametrize("seed", range(10))
    def test_low_rank_products_against_oracle(self, seed):
        rng = np.random.default_rng(1000 + seed)
        r = int(rng.integers(1, 4))
        left = random_matrix(rng, 4, r)
        right = random_matrix(rng, r, 5)
        m = left @ right
        assert m.rank() == brute_rank(m)
        assert m.rank() <= r

    @pytest.mark.parametrize("seed", range(10))
    def test_transpose_invariance(self, seed):
        rng = np.random.default_rng(2000 + seed)
        m = random_matrix(rng, int(rng.integers(1, 5)), int(rng.integers(1, 5)))
        assert m.rank() == m.transpose().rank()


class TestInverse:
    def test_identity(self):
        i4 = RationalMatrix.identity(4)
        assert i4.inverse() == i4

    def test_diagonal(self):
        m = RationalMatrix([[2, 0], [0, 4]])
        assert m.inverse() == RationalMatrix([[Fraction(1, 2), 0], [0, Fraction(1, 4)]])

    @pytest.mark.parametrize("seed", range(10))
    def test_multiply_back_exactly(self, seed):
        rng = np.random.default_rng(3000 + seed)
        while True:
            m = random_matrix(rng, 3, 3)
            if m.rank() == 3:
                break
        assert m @ m.inverse() == RationalMatrix.identity(3)
        assert m.inverse() @ m == RationalMatrix.identity(3)

    def test_singular_raises(self):
        with pytest.raises(SingularMatrix):
            RationalMatrix([[1, 2], [2, 4]]).inverse()

    def test_non_square_raises(self):
        with pytest.raises(SingularMatrix):
            RationalMatrix([[1, 2, 3]]).inverse()


class TestBlockDiagAndConcat:
    def test_identity_blocks(self):
        out = block_diag([RationalMatrix.identity(2), RationalMatrix.identity(3)])
        assert out == RationalMatrix.identity(5)

    def test_rectangular_layout(self):
        a = RationalMatrix([[1, 2, 3], [4, 5, 6]])
        b = RationalMatrix([[7]])
        out = block_diag([a, b])
        assert out.shape == (3, 4)
        assert out.entry(0, 0) == 1 and out.entry(1, 2) == 6
        assert out.entry(2, 3) == 7
        assert out.entry(0, 3) == 0 and out.entry(2, 0) == 0

    @pytest.mark.parametrize("seed", range(8))
    def test_rank_additivity(self, seed):
        rng = np.random.default_rng(4000 + seed)
        a = random_matrix(rng, int(rng.integers(1, 4)), int(rng.integers(1, 4)))
        b = random_matrix(rng, int(rng.integers(1, 4)), int(rng.integers(1, 4)))
        assert block_diag([a, b]).rank() == a.rank() + b.rank()

    def test_hconcat_shapes(self):
        out = hconcat([RationalMatrix.identity(2), RationalMatrix.zeros(2, 1)])
        assert out.shape == (2, 3)
        assert out.entry(0, 2) == 0

    @pytest.mark.parametrize("seed", range(8))
    def test_hconcat_rank_bounds(self, seed):
        rng = np.random.default_rng(5000 + seed)
        rows = int(rng.integers(1, 5))
        a = random_matrix(rng, rows, int(rng.integers(1, 4)))
        b = random_matrix(rng, rows, int(rng.integers(1, 4)))
        joint = hconcat([a, b]).rank()
        assert joint <= a.rank() + b.rank()
        assert joint >= max(a.rank(), b.rank())
        assert hconcat([a, a]).rank() == a.rank()

    def test_row_mismatch_raises(self):
        with pytest.raises(DimensionMismatch):
            hconcat([RationalMatrix.identity(2), RationalMatrix.identity(3)])

    def test_empty_lists_raise(self):
        with pytest.raises(DimensionMismatch):
            block_diag([])
        with pytest.raises(DimensionMismatch):
            hconcat([])


class TestMatmul:
    def test_known_product(self):
        a = RationalMatrix([[1, 2], [3, 4]])
        b = RationalMatrix([[0, 1], [1, 0]])
        assert a @ b == RationalMatrix([[2, 1], [4, 3]])

    def test_fractional_exactness(self):
        a = RationalMatrix([[Fraction(1, 3), Fraction(1, 7)]])
        b = RationalMatrix([[Fraction(7, 2)], [Fraction(3, 5)]])
        assert (a @ b).entry(0, 0) == Fraction(1, 3) * Fraction(7, 2) + Fraction(1, 7) * Fraction(3, 5)

    def test_empty_inner_dimension(self):
        a = RationalMatrix([[], []], cols=0)
        b = RationalMatrix([], cols=3)
        assert (a @ b) == RationalMatrix.zeros(2, 3)

    def test_zero_column_result(self):
        a = RationalMatrix.identity(2)
        b = RationalMatrix([[], []], cols=0)
        out = a @ b
        assert out.shape == (2, 0)

    def test_mismatch_raises(self):
        with pytest.raises(DimensionMismatch):
            RationalMatrix.identity(2) @ RationalMatrix.identity(3)

    @pytest.mark.parametrize("seed", range(6))
    def test_against_float_product(self, seed):
        rng = np.random.default_rng(6000 + seed)
        a = random_matrix(rng, 3, 4)
        b = random_matrix(rng, 4, 2)
        exact = (a @ b).to_float_array()
        approx = a.to_float_array() @ b.to_float_array()
        assert np.allclose(exact, approx, atol=1e-12)


class TestSerialization:
    def test_format(self):
        assert format_fraction(Fraction(3, 4)) == "3/4"
        assert format_fraction(Fraction(5)) == "5"
        assert format_fraction(Fraction(-1, 2)) == "-1/2"
        assert format_fraction(Fraction(0)) == "0"

    def test_parse_round_trip(self):
        for s in ("3/4", "5", "-1/2", "0", "-12344/9999"):
            assert format_fraction(parse_fraction(s)) == s

    @pytest.mark.parametrize("bad", ["1.5", "a/b", "1/0", "1/-2", "+3", "", "3 /4"])
    def test_parse_rejects_garbage(self, bad):
        with pytest.raises(ValueError):
            parse_fraction(bad)

    def test_matrix_strings_round_trip(self):
        rng = np.random.default_rng(7)
        m = random_matrix(rng, 3, 2)
        again = matrix_from_strings(m.to_strings(), cols=2)
        assert again == m

    def test_immutability(self):
        m = RationalMatrix.identity(2)
        with pytest.raises(AttributeError):
            m.rows = 5
