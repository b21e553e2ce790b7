import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from halfhex import binomial_matrix as bm
from halfhex.binomial_matrix import BinomialMatrixSpec, ExactMatrix
from halfhex.errors import InvalidInput
from halfhex.exactnum import elementary_symmetric, vandermonde
from oracles import C, cramer_inverse, leibniz_det


@st.composite
def binomial_specs(draw, n_max=6, a_max=12):
    n = draw(st.integers(1, n_max))
    A = draw(st.integers(0, a_max))
    B = draw(st.permutations(range(1, A + n + 1)))[:n]
    return BinomialMatrixSpec(A, tuple(B))


def M(rows):
    return ExactMatrix.from_rows(rows)


class TestSpec:
    def test_rejects_duplicates(self):
        with pytest.raises(InvalidInput):
            BinomialMatrixSpec(3, (2, 2))

    @pytest.mark.parametrize("B", [(0, 2), (2, 6)])
    def test_rejects_out_of_range(self, B):
        with pytest.raises(InvalidInput):
            BinomialMatrixSpec(3, B)

    def test_half_hexagon(self):
        spec = BinomialMatrixSpec.half_hexagon(3)
        assert (spec.A, spec.B, spec.n) == (4, (2, 4, 6), 3)


class TestBuildM:
    def test_two_by_two(self):
        assert bm.build_M(BinomialMatrixSpec(3, (2, 4))) == M([[3, 1], [1, 3]])

    def test_one_by_one(self):
        assert bm.build_M(BinomialMatrixSpec(3, (2,))) == M([[3]])

    @pytest.mark.parametrize("n", range(1, 7))
    def test_half_hexagon_matrix(self, n):
        expected = [[C(n + 1, 2 * j - i) for j in range(1, n + 1)] for i in range(1, n + 1)]
        assert bm.build_M(BinomialMatrixSpec.half_hexagon(n)) == M(expected)


class TestMatrixOps:
    def test_identity_squared(self):
        assert bm.identity(3) @ bm.identity(3) == bm.identity(3)

    def test_inverse_pair(self):
        inv = M([[Fraction(3, 8), Fraction(-1, 8)], [Fraction(-1, 8), Fraction(3, 8)]])
        assert M([[3, 1], [1, 3]]) @ inv == bm.identity(2)

    def test_right_identity(self):
        a = M([[1, 2, 3], [4, 5, 6]])
        assert a @ bm.identity(3) == a

    def test_shape_mismatch(self):
        with pytest.raises(InvalidInput):
            M([[1, 2]]) @ M([[1, 2]])

    def test_ragged_rows(self):
        with pytest.raises(InvalidInput):
            M([[1, 2], [3]])

    def test_one_based_entry(self):
        assert M([[1, 2], [3, 4]]).entry(2, 1) == 3


class TestBareiss:
    def test_examples(self):
        assert bm.bareiss_det(M([[3, 1], [1, 3]])) == 8
        assert bm.bareiss_det(M([[5]])) == 5
        assert bm.bareiss_det(M([])) == 1

    def test_needs_pivoting(self):
        rows = [[0, 1, 2], [3, 0, 1], [4, 5, 0]]
        assert bm.bareiss_det(rows) == leibniz_det(rows)

    def test_singular(self):
        assert bm.bareiss_det([[1, 2], [2, 4]]) == 0
        assert bm.bareiss_det([[0, 0], [0, 1]]) == 0

    def test_non_square(self):
        with pytest.raises(InvalidInput):
            bm.bareiss_det([[1, 2]])

    @given(st.integers(1, 5), st.data())
    def test_matches_leibniz(self, n, data):
        vals = st.fractions(min_value=-20, max_value=20, max_denominator=7)
        rows = [[data.draw(vals) for _ in range(n)] for _ in range(n)]
        assert bm.bareiss_det(rows) == leibniz_det(rows)

    @pytest.mark.parametrize("n", [1, 2, 5, 12, 30])
    def test_half_hexagon_count(self, n):
        assert bm.bareiss_det(bm.build_M(BinomialMatrixSpec.half_hexagon(n))) == 2 ** (n * (n + 1) // 2)


class TestClosedFormInverse:
    def test_one_by_one(self):
        assert bm.closed_form_inverse(BinomialMatrixSpec(3, (2,))) == M([[Fraction(1, 3)]])

    def test_two_by_two_matches_cramer(self):
        expected = cramer_inverse([[3, 1], [1, 3]])
        assert expected == [[Fraction(3, 8), Fraction(-1, 8)], [Fraction(-1, 8), Fraction(3, 8)]]
        assert bm.closed_form_inverse(BinomialMatrixSpec(3, (2, 4))) == M(expected)

    def test_five_by_five_random(self):
        rng = random.Random(7)
        spec = BinomialMatrixSpec(7, tuple(rng.sample(range(1, 13), 5)))
        assert bm.build_M(spec) @ bm.closed_form_inverse(spec) == bm.identity(5)

    def test_zero_A(self):
        # M is a permutation-like 0/1 matrix when A = 0
        spec = BinomialMatrixSpec(0, (3, 1, 2))
        assert bm.build_M(spec) @ bm.closed_form_inverse(spec) == bm.identity(3)

    @settings(max_examples=60, deadline=None)
    @given(binomial_specs())
    def test_two_sided_inverse(self, spec):
        m, inv = bm.build_M(spec), bm.closed_form_inverse(spec)
        assert m @ inv == bm.identity(spec.n)
        assert inv @ m == bm.identity(spec.n)

    @settings(max_examples=25, deadline=None)
    @given(binomial_specs(n_max=4, a_max=8))
    def test_agrees_with_cramer_oracle(self, spec):
        rows = bm.build_M(spec).to_lists()
        assert bm.closed_form_inverse(spec) == M(cramer_inverse(rows))

    def test_gauss_jordan_matches(self):
        spec = BinomialMatrixSpec(5, (6, 1, 3, 8))
        assert bm.gauss_jordan_inverse(bm.build_M(spec)) == bm.closed_form_inverse(spec)

    def test_gauss_jordan_singular(self):
        with pytest.raises(InvalidInput):
            bm.gauss_jordan_inverse(M([[1, 2], [2, 4]]))


class TestDetBinomialL:
    def test_two_by_two(self):
        assert leibniz_det([[4, 6], [6, 4]]) == -20
        assert bm.binomial_L_matrix(4, (0, 1)) == M([[4, 6], [6, 4]])
        assert bm.det_binomial_L(4, (0, 1), 2) == -20

    def test_one_by_one(self):
        assert bm.det_binomial_L(3, (0,), 1) == 3

    def test_rejects_undefined_factorials(self):
        with pytest.raises(InvalidInput):
            bm.det_binomial_L(3, (3,), 1)
        with pytest.raises(InvalidInput):
            bm.det_binomial_L(3, (-2,), 1)

    def test_length_mismatch(self):
        with pytest.raises(InvalidInput):
            bm.det_binomial_L(3, (0, 1), 3)

    @settings(max_examples=80, deadline=None)
    @given(st.integers(1, 12), st.integers(1, 5), st.data())
    def test_matches_elimination(self, A, n, data):
        L = [data.draw(st.integers(-n, A - 1)) for _ in range(n)]
        assert bm.det_binomial_L(A, L, n) == bm.bareiss_det(bm.binomial_L_matrix(A, L))


class TestCofactor:
    def test_p32_example(self):
        assert bm.cofactor_P(3, 2, 2, (1, 3)) == 24
        # (A+1) Delta (-2 e2 + (A+4) e1 - (3A+8)) at A=2, bbar=(1,3)
        assert 3 * 2 * (-2 * 3 + 6 * 4 - 14) == 24

    @pytest.mark.parametrize("n", range(1, 8))
    def test_first_row_specialisation(self, n):
        rng = random.Random(n)
        for _ in range(5):
            A = rng.randint(0, 10)
            bbar = rng.sample(range(-5, 20), n - 1)
            expected = vandermonde(bbar)
            for i in range(1, n - 1):
                expected *= (A + i) ** (n - 1 - i)
            for b in bbar:
                expected *= b - 1
            assert bm.cofactor_P(n, 1, A, bbar) == expected

    @pytest.mark.parametrize("n", range(1, 7))
    def test_matches_struck_minor(self, n):
        rng = random.Random(100 + n)
        for s in range(1, n + 1):
            for _ in range(4):
                A = rng.randint(0, 9)
                bbar = rng.sample(range(1, A + n + 1), n - 1)
                lhs = bm.struck_minor(n, s, A, bbar)
                assert lhs == bm.cofactor_prefactor(n, A, bbar) * bm.cofactor_P(n, s, A, bbar)

    def test_struck_minor_matches_deleting_from_M(self):
        spec = BinomialMatrixSpec(5, (2, 7, 4, 5))
        rows = bm.build_M(spec).to_lists()
        for s in range(1, 5):
            for col in range(1, 5):
                minor = [[rows[i][j] for j in range(4) if j != col - 1] for i in range(4) if i != s - 1]
                bbar = [b for j, b in enumerate(spec.B, 1) if j != col]
                assert bm.struck_minor(4, s, 5, bbar) == leibniz_det(minor)

    @given(st.integers(2, 6), st.integers(0, 12), st.data())
    def test_antisymmetric_and_vanishing(self, n, A, data):
        s = data.draw(st.integers(1, n))
        bbar = data.draw(st.lists(st.integers(-10, 25), min_size=n - 1, max_size=n - 1))
        value = bm.cofactor_P(n, s, A, bbar)
        if n >= 3:
            swapped = [bbar[1], bbar[0]] + bbar[2:]
            assert bm.cofactor_P(n, s, A, swapped) == -value
        if len(set(bbar)) < len(bbar):
            assert value == 0

    def test_bad_arguments(self):
        with pytest.raises(InvalidInput):
            bm.cofactor_P(3, 4, 2, (1, 2))
        with pytest.raises(InvalidInput):
            bm.cofactor_P(3, 1, 2, (1,))


class TestLagrange:
    def test_single_point(self):
        for A in range(0, 5):
            for b in range(1, A + 2):
                lhs, rhs = bm.lagrange_identity_sides(A, (b,), 1, b)
                assert lhs == rhs == Fraction(C(A, b - 1), C(A, b - 1))

    def test_small_case(self):
        lhs, rhs = bm.lagrange_identity_sides(3, (2, 4), 1, 1)
        # 9/8 - 1/8 on the left, C(4,0)^-1 C(3,0) on the right
        assert lhs == rhs == 1

    @settings(max_examples=60, deadline=None)
    @given(binomial_specs(n_max=5, a_max=8), st.data())
    def test_sweep(self, spec, data):
        alpha = data.draw(st.integers(1, spec.n))
        k = data.draw(st.integers(1, spec.A + spec.n))
        lhs, rhs = bm.lagrange_identity_sides(spec.A, spec.B, alpha, k)
        assert lhs == rhs

    def test_rejects_bad_k(self):
        with pytest.raises(InvalidInput):
            bm.lagrange_identity_sides(3, (2, 4), 1, 0)
        with pytest.raises(InvalidInput):
            bm.lagrange_identity_sides(3, (2, 4), 3, 1)


def test_elementary_symmetric_expansion_of_p32():
    # cofactor_P is a polynomial in bbar; spot-check one extra point outside the matrix range
    A, bbar = 4, (-3, 11)
    e1, e2 = elementary_symmetric(bbar, 1), elementary_symmetric(bbar, 2)
    assert bm.cofactor_P(3, 2, A, bbar) == (A + 1) * vandermonde(bbar) * (-2 * e2 + (A + 4) * e1 - (3 * A + 8))
