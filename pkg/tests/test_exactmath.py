"""Tests for exact linear algebra, the Gordan alternative and bounded enumeration."""

import random
import time
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from app.errors import DimensionMismatchError, InputError
from app.models.exact import DegreeVector
from app.services.exactmath import (
    bounded_nonneg_solutions,
    determinant,
    identity,
    integral_scaling,
    iter_nonneg_solutions,
    mat_mul,
    positive_functional_or_certificate,
    snf,
    solve_linear,
)


V = DegreeVector.of


def small_matrices(max_size=5, bound=5):
    return st.integers(1, max_size).flatmap(
        lambda rows: st.integers(1, max_size).flatmap(
            lambda cols: st.lists(
                st.lists(st.integers(-bound, bound), min_size=cols, max_size=cols),
                min_size=rows,
                max_size=rows,
            )
        )
    )


def generator_sets(dimension):
    vector = st.tuples(*[st.integers(-3, 3)] * dimension).filter(any)
    return st.lists(vector, min_size=1, max_size=5)


class TestSmithNormalForm:
    """Test Smith normal form."""

    def assert_snf(self, matrix):
        u, d, v = snf(matrix)
        assert mat_mul(mat_mul(u, matrix), v) == d
        assert abs(determinant(u)) == 1
        assert abs(determinant(v)) == 1
        for i, row in enumerate(d):
            for j, value in enumerate(row):
                if i != j:
                    assert value == 0
        diagonal = [d[i][i] for i in range(min(len(d), len(d[0])))]
        assert all(value >= 0 for value in diagonal)
        nonzero = [value for value in diagonal if value]
        assert diagonal[:len(nonzero)] == nonzero
        for a, b in zip(nonzero, nonzero[1:]):
            assert b % a == 0
        return u, d, v

    def test_identity(self):
        """Test that the identity is its own normal form."""
        u, d, v = self.assert_snf(identity(2))
        assert u == identity(2)
        assert d == identity(2)
        assert v == identity(2)

    def test_single_row(self):
        """Test a row whose entries have gcd 1."""
        _, d, _ = self.assert_snf([[1, 1, -2]])
        assert d == [[1, 0, 0]]

    def test_coprime_diagonal(self):
        """Test that diag(2, 3) becomes diag(1, 6)."""
        _, d, _ = self.assert_snf([[2, 0], [0, 3]])
        assert d == [[1, 0], [0, 6]]

    def test_three_by_three(self):
        """Test a textbook 3x3 example."""
        _, d, _ = self.assert_snf([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
        assert [d[i][i] for i in range(3)] == [2, 6, 12]

    def test_zero_matrix(self):
        """Test that the zero matrix is left alone."""
        _, d, _ = self.assert_snf([[0, 0], [0, 0]])
        assert d == [[0, 0], [0, 0]]

    def test_ragged_matrix_rejected(self):
        """Test that non-rectangular input raises."""
        with pytest.raises(DimensionMismatchError):
            snf([[1, 2], [3]])

    @given(small_matrices())
    @settings(max_examples=100)
    def test_postcondition_property(self, matrix):
        """Test U*A*V = D with unimodular U, V on random matrices."""
        self.assert_snf(matrix)


class TestLinearAlgebra:
    """Test determinants and exact solving."""

    def test_determinant(self):
        """Test determinants including a row swap."""
        assert determinant([[2, 0], [0, 3]]) == 6
        assert determinant([[0, 1], [1, 0]]) == -1
        assert determinant([[1, 2], [2, 4]]) == 0

    def test_determinant_needs_square(self):
        """Test that a non-square determinant raises."""
        with pytest.raises(DimensionMismatchError):
            determinant([[1, 2, 3], [4, 5, 6]])

    def test_solve_linear(self):
        """Test an exact rational solve."""
        assert solve_linear([[1, 2], [3, 4]], [[5], [6]]) == [[-4], [Fraction(9, 2)]]

    def test_solve_linear_inconsistent(self):
        """Test that an inconsistent system gives None."""
        assert solve_linear([[1, 1], [1, 1]], [[1], [2]]) is None

    def test_solve_linear_underdetermined(self):
        """Test that some solution of an underdetermined system is returned."""
        solution = solve_linear([[1, 1]], [[3]])
        assert solution[0][0] + solution[1][0] == 3

    def test_solve_linear_row_mismatch(self):
        """Test that a right-hand side with the wrong row count raises."""
        with pytest.raises(DimensionMismatchError):
            solve_linear([[1, 0], [0, 1]], [[1]])

    def test_integral_scaling(self):
        """Test the smallest coprime integer multiple."""
        assert integral_scaling([Fraction(1, 2), Fraction(1, 3)]) == [3, 2]
        assert integral_scaling([2, 4]) == [1, 2]
        assert integral_scaling([0, 0]) == [0, 0]


class TestPositiveFunctional:
    """Test the witness-or-certificate dichotomy."""

    def assert_verifies(self, generators):
        outcome = positive_functional_or_certificate(generators)
        assert (outcome.witness is None) != (outcome.certificate is None)
        if outcome.has_witness:
            assert all(outcome.witness.dot(g) >= 1 for g in generators)
        else:
            multiplicities = outcome.certificate
            assert all(k >= 0 for k in multiplicities)
            assert any(multiplicities)
            dimension = generators[0].dimension
            for j in range(dimension):
                assert sum(k * g[j] for k, g in zip(multiplicities, generators)) == 0
        return outcome

    def test_positive_orthant(self):
        """Test the standard orthant gets the all-ones functional."""
        outcome = self.assert_verifies([V(1, 0), V(0, 1)])
        assert outcome.witness == V(1, 1)

    def test_opposite_vectors(self):
        """Test that opposite vectors give the relation (1, 1)."""
        outcome = self.assert_verifies([V(1, 0), V(-1, 0)])
        assert outcome.certificate == (1, 1)

    def test_hirzebruch_generators(self):
        """Test the Hirzebruch degrees get the witness (1, 3)."""
        outcome = self.assert_verifies([V(1, 0), V(-2, 1), V(0, 1)])
        assert outcome.witness == V(1, 3)

    def test_rational_generators(self):
        """Test that a witness scales up to reach 1 on small rational generators."""
        outcome = self.assert_verifies([V(Fraction(1, 3))])
        assert outcome.witness.dot(V(Fraction(1, 3))) >= 1

    def test_zero_generator_rejected(self):
        """Test that a zero generator raises."""
        with pytest.raises(InputError):
            positive_functional_or_certificate([V(1, 0), V(0, 0)])

    def test_dimension_mismatch(self):
        """Test that mixed dimensions raise."""
        with pytest.raises(DimensionMismatchError):
            positive_functional_or_certificate([V(1, 0), V(1)])

    @given(generator_sets(2))
    @settings(max_examples=100)
    def test_dichotomy_in_the_plane(self, raw):
        """Test exactly one verified branch for random sets in Z^2."""
        self.assert_verifies([DegreeVector(g) for g in raw])

    @given(generator_sets(3))
    @settings(max_examples=100)
    def test_dichotomy_in_space(self, raw):
        """Test exactly one verified branch for random sets in Z^3."""
        self.assert_verifies([DegreeVector(g) for g in raw])

    @pytest.mark.parametrize("seed", range(5))
    def test_ten_generators_in_rank_five(self, seed):
        """Test that ten random generators in Z^5 are decided quickly."""
        rng = random.Random(seed)
        generators = []
        while len(generators) < 10:
            entries = tuple(rng.randint(-5, 5) for _ in range(5))
            if any(entries):
                generators.append(DegreeVector(entries))
        started = time.perf_counter()
        self.assert_verifies(generators)
        assert time.perf_counter() - started < 20

    def test_ten_pointed_generators_in_rank_six(self):
        """Test a witness for ten generators in Z^6 with positive coordinate sums."""
        rng = random.Random(6)
        generators = []
        while len(generators) < 10:
            entries = tuple(rng.randint(-4, 4) for _ in range(6))
            if sum(entries) > 0:
                generators.append(DegreeVector(entries))
        started = time.perf_counter()
        outcome = self.assert_verifies(generators)
        assert time.perf_counter() - started < 20
        assert outcome.has_witness

    @given(st.lists(st.tuples(*[st.integers(-3, 3)] * 5).filter(any), min_size=6, max_size=10))
    @settings(max_examples=20)
    def test_dichotomy_in_rank_five(self, raw):
        """Test exactly one verified branch for random sets in Z^5."""
        self.assert_verifies([DegreeVector(g) for g in raw])


class TestBoundedSolutions:
    """Test bounded nonnegative integer solution enumeration."""

    def test_numerical_semigroup(self):
        """Test 7 = 2 + 2 + 3 is the only way with parts 2 and 3."""
        assert bounded_nonneg_solutions([V(2), V(3)], V(7), 10) == {(2, 1)}

    def test_unreachable_target(self):
        """Test a target below every generator."""
        assert bounded_nonneg_solutions([V(2), V(3)], V(1), 10) == set()

    def test_hirzebruch_target(self):
        """Test all factorizations of (0, 2)."""
        generators = [V(1, 0), V(-2, 1), V(0, 1)]
        assert bounded_nonneg_solutions(generators, V(0, 2), 10) == {(0, 0, 2), (2, 1, 1), (4, 2, 0)}

    def test_length_bound_cuts_solutions(self):
        """Test that the length bound excludes long factorizations."""
        generators = [V(1, 0), V(-2, 1), V(0, 1)]
        assert bounded_nonneg_solutions(generators, V(0, 2), 4) == {(0, 0, 2), (2, 1, 1)}

    def test_functional_pruning(self):
        """Test enumeration with a height functional."""
        generators = [V(1, 0), V(0, 1), V(1, 1)]
        solutions = set(iter_nonneg_solutions(generators, V(1, 1), 2, functional=V(1, 1)))
        assert solutions == {(1, 1, 0), (0, 0, 1)}

    def test_negative_bound_rejected(self):
        """Test that a negative length bound raises."""
        with pytest.raises(InputError):
            bounded_nonneg_solutions([V(1)], V(1), -1)

    def test_dimension_mismatch(self):
        """Test that a target of the wrong dimension raises."""
        with pytest.raises(DimensionMismatchError):
            bounded_nonneg_solutions([V(1, 0)], V(1), 3)

    @given(
        st.integers(1, 3).flatmap(
            lambda dim: st.tuples(
                st.lists(st.tuples(*[st.integers(-2, 3)] * dim).filter(any), min_size=1, max_size=3),
                st.tuples(*[st.integers(-3, 6)] * dim),
                st.integers(0, 8),
            )
        )
    )
    @settings(max_examples=100)
    def test_agrees_with_nested_loops(self, case):
        """Test agreement with naive enumeration for dim <= 3 and bound <= 8."""
        raw_generators, raw_target, bound = case
        generators = [DegreeVector(g) for g in raw_generators]
        target = DegreeVector(raw_target)
        expected = set()
        for x in product(range(bound + 1), repeat=len(generators)):
            if sum(x) > bound:
                continue
            total = tuple(sum(k * g[j] for k, g in zip(x, raw_generators)) for j in range(len(raw_target)))
            if total == raw_target:
                expected.add(x)
        assert bounded_nonneg_solutions(generators, target, bound) == expected
