"""Tests for the Buchberger engine, syzygies and Schreyer frames."""

import threading
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from app.errors import ComputationCancelled, InputError, ResourceLimitExceeded
from app.models.resolution import TermOrder
from app.models.ring import CoefficientField, MGPolyRing
from app.services.groebner import (
    Position,
    groebner_basis,
    is_groebner_basis,
    module_groebner_basis,
    normal_form,
    schreyer_frame,
    syzygies,
)


def _polynomials(ring):
    term = st.tuples(st.tuples(*[st.integers(0, 2)] * ring.nvars), st.integers(-5, 5))
    return st.lists(term, min_size=1, max_size=3).map(lambda terms: ring.polynomial(terms))


class TestGroebnerBasis:
    """Test reduced Gröbner bases."""

    def test_already_a_basis(self, xy_ring):
        """Test that {x^2, xy} is returned unchanged under lex."""
        x, y = xy_ring.gens()
        basis = groebner_basis([x ** 2, x * y], TermOrder.lex(2))
        assert basis == [x ** 2, x * y]

    def test_linear(self, xy_ring):
        """Test that {x + y, x - y} reduces to {x, y}."""
        x, y = xy_ring.gens()
        assert groebner_basis([x + y, x - y], TermOrder.degrevlex(2)) == [x, y]

    def test_lex_elimination(self, xyz_ring):
        """Test substitution under lex x > y > z."""
        x, y, z = xyz_ring.gens()
        basis = groebner_basis([x - y ** 2, y - z], TermOrder.lex(3))
        assert basis == [x - z ** 2, y - z]

    def test_textbook_example(self, xy_ring):
        """Test the reduced basis of {x^3 - 2xy, x^2 y - 2y^2 + x} under degrevlex."""
        x, y = xy_ring.gens()
        basis = groebner_basis([x ** 3 - 2 * x * y, x ** 2 * y - 2 * y ** 2 + x], TermOrder.degrevlex(2))
        assert basis == [x ** 2, x * y, y ** 2 - x * Fraction(1, 2)]
        assert is_groebner_basis(basis, TermOrder.degrevlex(2))

    def test_normal_form(self, xy_ring):
        """Test division by the textbook basis."""
        x, y = xy_ring.gens()
        order = TermOrder.degrevlex(2)
        basis = groebner_basis([x ** 3 - 2 * x * y, x ** 2 * y - 2 * y ** 2 + x], order)
        assert normal_form(y ** 2, basis, order) == x * Fraction(1, 2)
        assert normal_form(x ** 3 * y, basis, order).is_zero()

    def test_not_a_basis(self, xy_ring):
        """Test that the input of the textbook example is not a Gröbner basis."""
        x, y = xy_ring.gens()
        assert not is_groebner_basis([x ** 3 - 2 * x * y, x ** 2 * y - 2 * y ** 2 + x], TermOrder.degrevlex(2))

    def test_unit_ideal(self, xy_ring):
        """Test that an ideal containing 1 has basis {1}."""
        x, y = xy_ring.gens()
        assert groebner_basis([x, x + 1], TermOrder.degrevlex(2)) == [xy_ring.constant(1)]

    def test_prime_field(self):
        """Test a basis over GF(7) is monic."""
        ring = MGPolyRing.standard(["x", "y"], CoefficientField(7))
        x, y = ring.gens()
        basis = groebner_basis([3 * x + y], TermOrder.degrevlex(2))
        assert basis == [x + 5 * y]

    def test_empty_rejected(self):
        """Test that an empty generator list raises."""
        with pytest.raises(InputError):
            groebner_basis([], TermOrder.degrevlex(2))

    def test_zero_generator_rejected(self, xy_ring):
        """Test that a zero generator raises."""
        with pytest.raises(InputError):
            groebner_basis([xy_ring.constant(0)], TermOrder.degrevlex(2))

    def test_order_size_mismatch(self, xy_ring):
        """Test that the order must have one weight per variable."""
        x, _ = xy_ring.gens()
        with pytest.raises(InputError):
            groebner_basis([x], TermOrder.degrevlex(3))

    def test_pair_queue_cap(self, xy_ring):
        """Test the resource guard on the pair queue."""
        x, y = xy_ring.gens()
        with pytest.raises(ResourceLimitExceeded):
            groebner_basis([x, y], TermOrder.degrevlex(2), max_pair_queue=0)

    def test_cancellation(self, xy_ring):
        """Test that a set cancellation event stops the computation."""
        x, y = xy_ring.gens()
        event = threading.Event()
        event.set()
        with pytest.raises(ComputationCancelled):
            groebner_basis([x ** 2, x * y], TermOrder.degrevlex(2), cancel_event=event)

    @given(st.data())
    @settings(max_examples=30)
    def test_output_is_a_groebner_basis(self, data):
        """Test the S-pair criterion and ideal membership on random input."""
        ring = MGPolyRing.standard(["x", "y", "z"], CoefficientField(101))
        generators = data.draw(
            st.lists(_polynomials(ring).filter(lambda p: not p.is_zero()), min_size=1, max_size=3)
        )
        order = TermOrder.degrevlex(3)
        basis = groebner_basis(generators, order)
        assert is_groebner_basis(basis, order)
        for generator in generators:
            assert normal_form(generator, basis, order).is_zero()


class TestModuleGroebnerBasis:
    """Test Gröbner bases of submodules."""

    def test_single_element(self, xy_ring):
        """Test that a single vector is its own basis."""
        x, y = xy_ring.gens()
        basis = module_groebner_basis([(x, y)], TermOrder.degrevlex(2))
        assert basis == [(x, y)]

    def test_term_over_position(self, xy_ring):
        """Test that both positions give Gröbner bases."""
        x, y = xy_ring.gens()
        order = TermOrder.degrevlex(2)
        generators = [(x, y), (y, x)]
        for position in (Position.POT, Position.TOP):
            basis = module_groebner_basis(generators, order, position)
            assert is_groebner_basis(basis, order, position)
            for generator in generators:
                assert all(p.is_zero() for p in normal_form(generator, basis, order, position))

    def test_rank_mismatch(self, xy_ring):
        """Test that vectors of different ranks raise."""
        x, y = xy_ring.gens()
        with pytest.raises(InputError):
            module_groebner_basis([(x, y), (x,)], TermOrder.degrevlex(2))


class TestSyzygies:
    """Test syzygy modules."""

    def test_koszul_relation(self, xy_ring):
        """Test that (x, y) has the single syzygy (y, -x)."""
        x, y = xy_ring.gens()
        assert syzygies([x, y]) == [(y, -x)]

    def test_divisible_generators(self, xy_ring):
        """Test that (x^2, x) has the syzygy (1, -x)."""
        x, _ = xy_ring.gens()
        assert syzygies([x ** 2, x]) == [(xy_ring.constant(1), -x)]

    def test_three_variables(self, xyz_ring):
        """Test the three Koszul relations of (x, y, z)."""
        x, y, z = xyz_ring.gens()
        zero = xyz_ring.constant(0)
        assert set(syzygies([x, y, z])) == {(y, -x, zero), (z, zero, -x), (zero, z, -y)}

    @given(st.data())
    @settings(max_examples=20)
    def test_syzygies_are_relations(self, data):
        """Test sum a_i f_i = 0 for every returned syzygy."""
        ring = MGPolyRing.standard(["x", "y", "z"], CoefficientField(101))
        generators = data.draw(
            st.lists(_polynomials(ring).filter(lambda p: not p.is_zero()), min_size=1, max_size=3)
        )
        for syzygy in syzygies(generators):
            total = ring.constant(0)
            for a, f in zip(syzygy, generators):
                total = total + a * f
            assert total.is_zero()


class TestSchreyerFrame:
    """Test Schreyer frames."""

    def test_koszul_frame(self, xyz_ring):
        """Test that <x, y, z> has frame ranks 3, 3, 1."""
        x, y, z = xyz_ring.gens()
        levels = schreyer_frame([x, y, z], TermOrder.degrevlex(3))
        assert [len(level.vectors) for level in levels] == [3, 3, 1]

    def test_principal_ideal(self, xy_ring):
        """Test that a principal ideal has a single level."""
        x, y = xy_ring.gens()
        levels = schreyer_frame([x * y + y ** 2], TermOrder.degrevlex(2))
        assert [len(level.vectors) for level in levels] == [1]
