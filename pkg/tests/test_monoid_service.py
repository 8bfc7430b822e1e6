"""Tests for support monoid decisions and the built-in monoids."""

from fractions import Fraction
from itertools import product
from math import floor

import pytest
from hypothesis import given, settings, strategies as st
from sympy import primerange

from app.errors import DimensionMismatchError, InputError, NotMemberError, NotPointedError
from app.models.exact import DegreeVector
from app.models.monoid import BuiltinMonoid, FgMonoid, HeightWitness
from app.services import monoid_service
from app.services.monoid_service import PrimeReciprocalForm


V = DegreeVector.of


def monoid(*generators):
    return FgMonoid.from_generators(generators)


class TestFgMonoid:
    """Test monoid construction."""

    def test_zero_and_duplicates_dropped(self):
        """Test that zero generators and repeats are removed."""
        m = FgMonoid.from_generators([(1, 0), (0, 0), (1, 0), (0, 1)])
        assert m.generators == (V(1, 0), V(0, 1))

    def test_parse(self):
        """Test the semicolon-separated generator syntax."""
        m = FgMonoid.parse("(1,0);(-2,1);(0,1)")
        assert m.generators == (V(1, 0), V(-2, 1), V(0, 1))
        assert str(m) == "(1,0);(-2,1);(0,1)"

    def test_parse_rationals(self):
        """Test rational entries in generators."""
        m = FgMonoid.parse("(1/2);(3)")
        assert m.generators == (V(Fraction(1, 2)), V(3))

    def test_mixed_dimensions_rejected(self):
        """Test that generators of different dimensions raise."""
        with pytest.raises(DimensionMismatchError):
            FgMonoid.parse("(1,0);(1)")

    def test_empty_rejected(self):
        """Test that an empty generator list raises."""
        with pytest.raises(InputError):
            FgMonoid.parse(" ; ")


class TestPointedness:
    """Test pointedness and bounded factorization."""

    def test_orthant_is_pointed(self):
        """Test the standard orthant."""
        verdict = monoid_service.is_pointed(monoid((1, 0), (0, 1)))
        assert verdict.pointed
        assert verdict.certificate is None

    def test_unit_pair(self):
        """Test a monoid with a unit pair."""
        verdict = monoid_service.is_pointed(monoid((1, -1), (-1, 1)))
        assert not verdict.pointed
        assert verdict.certificate.multiplicities == (1, 1)
        assert str(verdict.certificate) == "1*(1,-1) + 1*(-1,1) = 0"

    def test_hirzebruch_is_pointed(self, hirzebruch_monoid):
        """Test the Hirzebruch support."""
        assert monoid_service.is_pointed(hirzebruch_monoid).pointed

    def test_natural_numbers(self):
        """Test that N has the identity as witness."""
        verdict = monoid_service.has_bounded_factorization(monoid((1,)))
        assert verdict.bounded
        assert verdict.witness.functional == V(1)

    def test_line_with_a_unit(self):
        """Test the certificate for a monoid containing a line."""
        verdict = monoid_service.has_bounded_factorization(monoid((1, 0), (-1, 0), (0, 1)))
        assert not verdict.bounded
        assert verdict.witness is None
        assert verdict.certificate.multiplicities == (1, 1, 0)
        assert verdict.certificate.element == V(1, 0)

    def test_hirzebruch_witness(self, hirzebruch_monoid):
        """Test the Hirzebruch witness (1, 3)."""
        verdict = monoid_service.has_bounded_factorization(hirzebruch_monoid)
        assert verdict.bounded
        assert verdict.witness.functional == V(1, 3)

    @given(
        st.integers(2, 3).flatmap(
            lambda dim: st.lists(st.tuples(*[st.integers(-3, 3)] * dim).filter(any), min_size=1, max_size=5)
        )
    )
    @settings(max_examples=200)
    def test_pointed_iff_bounded_factorization(self, raw):
        """Test that the two verdicts agree and their evidence verifies."""
        m = FgMonoid.from_generators(raw)
        pointed = monoid_service.is_pointed(m)
        bf = monoid_service.has_bounded_factorization(m)
        assert pointed.pointed == bf.bounded
        if bf.bounded:
            assert monoid_service.verify_height_witness(m.generators, bf.witness.functional)
        else:
            assert any(k for _, k in bf.certificate.relation)
            total = DegreeVector.zero(m.dimension)
            for generator, k in bf.certificate.relation:
                total = total + generator.scale(k)
            assert total.is_zero()


class TestHeightWitness:
    """Test height witness verification."""

    def test_halfplane_generators(self):
        """Test the height (n, m) -> m on (-n, 1), (n, 1)."""
        generators = [V(-n, 1) for n in range(1, 6)] + [V(n, 1) for n in range(1, 6)]
        assert monoid_service.verify_height_witness(generators, V(0, 1))

    def test_vanishing_functional(self):
        """Test a functional vanishing on a generator."""
        assert not monoid_service.verify_height_witness([V(0, 1)], V(1, 0))

    def test_hirzebruch(self, hirzebruch_monoid):
        """Test three dot products for the Hirzebruch witness."""
        assert monoid_service.verify_height_witness(hirzebruch_monoid.generators, V(1, 3))

    def test_dimension_mismatch(self):
        """Test that a functional of the wrong dimension raises."""
        with pytest.raises(DimensionMismatchError):
            monoid_service.verify_height_witness([V(1, 0)], V(1))

    def test_witness_rejects_small_values(self):
        """Test that HeightWitness validates its generators."""
        with pytest.raises(InputError):
            HeightWitness(V(1, 0), (V(0, 1),))


class TestMembership:
    """Test membership and the divisibility order."""

    def test_numerical_semigroup(self):
        """Test membership in <2, 3>."""
        m = monoid((2,), (3,))
        assert not monoid_service.member(m, V(1))
        assert monoid_service.member(m, V(7))
        assert monoid_service.member(m, V(0))

    def test_hirzebruch_member(self, hirzebruch_monoid):
        """Test (1, 1) = (1, 0) + (0, 1)."""
        assert monoid_service.member(hirzebruch_monoid, V(1, 1))
        assert not monoid_service.member(hirzebruch_monoid, V(0, -1))

    def test_non_pointed_rejected(self):
        """Test that membership in a non-pointed monoid raises."""
        with pytest.raises(NotPointedError) as excinfo:
            monoid_service.member(monoid((1, 0), (-1, 0)), V(1, 0))
        assert excinfo.value.certificate is not None

    def test_dimension_mismatch(self, hirzebruch_monoid):
        """Test that an element of the wrong dimension raises."""
        with pytest.raises(DimensionMismatchError):
            monoid_service.member(hirzebruch_monoid, V(1))

    def test_leq_examples(self, hirzebruch_monoid):
        """Test comparable and incomparable pairs."""
        orthant = monoid((1, 0), (0, 1))
        assert monoid_service.leq(orthant, V(1, 0), V(2, 1))
        assert not monoid_service.leq(orthant, V(1, 0), V(0, 1))
        assert not monoid_service.leq(orthant, V(0, 1), V(1, 0))
        assert monoid_service.leq(hirzebruch_monoid, V(-2, 1), V(0, 2))

    def test_order_axioms(self, hirzebruch_monoid):
        """Test reflexivity, antisymmetry and transitivity on a sample."""
        sample = []
        for a, b, c in product(range(4), range(3), range(2)):
            element = V(1, 0).scale(a) + V(-2, 1).scale(b) + V(0, 1).scale(c)
            if element not in sample:
                sample.append(element)
        leq = {
            (g, h): monoid_service.leq(hirzebruch_monoid, g, h) for g in sample for h in sample
        }
        for g in sample:
            assert leq[(g, g)]
        for g, h in product(sample, sample):
            if leq[(g, h)] and leq[(h, g)]:
                assert g == h
        for g, h, k in product(sample, sample, sample):
            if leq[(g, h)] and leq[(h, k)]:
                assert leq[(g, k)]


class TestFactorizationLength:
    """Test maximal factorization lengths."""

    def test_single_generator(self):
        """Test that 5 in N has length 5."""
        m = monoid((1,))
        witness = monoid_service.has_bounded_factorization(m).witness
        assert monoid_service.max_factorization_length(m, witness, V(5)) == 5

    def test_two_and_three(self):
        """Test 7 = 2 + 2 + 3."""
        m = monoid((2,), (3,))
        witness = monoid_service.has_bounded_factorization(m).witness
        assert monoid_service.max_factorization_length(m, witness, V(7)) == 3

    def test_hirzebruch(self, hirzebruch_monoid):
        """Test that (0, 2) has a factorization of length 6, matching floor(w.g)."""
        witness = HeightWitness(V(1, 3), hirzebruch_monoid.generators)
        length = monoid_service.max_factorization_length(hirzebruch_monoid, witness, V(0, 2))
        assert length == 6
        assert length == floor(witness.height(V(0, 2)))

    def test_non_member(self):
        """Test that a non-member raises."""
        m = monoid((2,), (3,))
        witness = monoid_service.has_bounded_factorization(m).witness
        with pytest.raises(NotMemberError):
            monoid_service.max_factorization_length(m, witness, V(1))

    def test_invalid_witness(self, hirzebruch_monoid):
        """Test that a functional below 1 on a generator raises."""
        with pytest.raises(InputError):
            monoid_service.max_factorization_length(hirzebruch_monoid, HeightWitness(V(1, 0)), V(0, 2))

    @given(st.tuples(st.integers(0, 3), st.integers(0, 2), st.integers(0, 2)))
    @settings(max_examples=30)
    def test_bounded_by_height(self, counts):
        """Test length <= floor(w.g) for members of the Hirzebruch support."""
        m = FgMonoid.from_generators([(1, 0), (-2, 1), (0, 1)])
        witness = monoid_service.has_bounded_factorization(m).witness
        element = DegreeVector.zero(2)
        for generator, count in zip(m.generators, counts):
            element = element + generator.scale(count)
        length = monoid_service.max_factorization_length(m, witness, element)
        assert sum(counts) <= length <= floor(witness.height(element))


class TestPrimeReciprocal:
    """Test the monoid generated by the reciprocals of the primes."""

    def test_integer(self):
        """Test that integers have no fractional parts."""
        assert monoid_service.prime_reciprocal_canonical(1) == PrimeReciprocalForm(1, ())

    def test_five_sixths(self):
        """Test 5/6 = 1/2 + 1/3."""
        form = monoid_service.prime_reciprocal_canonical(Fraction(5, 6))
        assert form == PrimeReciprocalForm(0, ((2, 1), (3, 1)))

    def test_seven_sixths(self):
        """Test 7/6 = 1/2 + 2/3."""
        form = monoid_service.prime_reciprocal_canonical("7/6")
        assert form == PrimeReciprocalForm(0, ((2, 1), (3, 2)))

    def test_non_members(self):
        """Test a square denominator and a value below its residues."""
        assert monoid_service.prime_reciprocal_canonical(Fraction(1, 4)) is None
        assert monoid_service.prime_reciprocal_canonical(Fraction(1, 6)) is None

    def test_negative_rejected(self):
        """Test that negative input raises."""
        with pytest.raises(InputError):
            monoid_service.prime_reciprocal_canonical(Fraction(-1, 2))

    def test_round_trip_small_denominators(self):
        """Test reconstruction for every member with denominator <= 210."""
        members = 0
        for denominator in range(1, 211):
            for numerator in range(0, 2 * denominator + 1):
                q = Fraction(numerator, denominator)
                if q.denominator != denominator:
                    continue
                form = monoid_service.prime_reciprocal_canonical(q)
                if form is None:
                    continue
                members += 1
                assert form.value() == q
                assert all(0 < h < p for p, h in form.parts)
        assert members > 0

    @given(
        st.integers(0, 5),
        st.tuples(st.integers(0, 1), st.integers(0, 2), st.integers(0, 4), st.integers(0, 6)),
    )
    @settings(max_examples=100)
    def test_canonical_form_is_unique(self, whole, residues):
        """Test that a canonical form is recovered from its value."""
        parts = tuple((p, h) for p, h in zip((2, 3, 5, 7), residues) if h)
        form = PrimeReciprocalForm(whole, parts)
        assert monoid_service.prime_reciprocal_canonical(form.value()) == form

    @pytest.mark.parametrize(
        "value, bound",
        [
            ("1", 1),
            ("5/6", 2),
            ("7/6", 3),
            ("0", 0),
            ("3", 3),
            ("1/2", 1),
            ("2/3", 2),
            ("4/5", 4),
            ("6/7", 6),
            ("31/30", 3),
            ("1/3", 1),
            ("3/2", 2),
            ("5/3", 3),
            ("11/6", 3),
            ("13/6", 4),
            ("7/5", 3),
            ("53/30", 6),
            ("17/10", 3),
            ("9/10", 3),
            ("29/15", 5),
        ],
    )
    def test_descending_chain_bound(self, value, bound):
        """Test h1 + h2 + ... on hand-checked members."""
        assert monoid_service.descending_chain_bound(value) == bound

    def test_chain_bound_non_member(self):
        """Test that the chain bound of a non-member raises."""
        with pytest.raises(NotMemberError):
            monoid_service.descending_chain_bound(Fraction(1, 4))

    @pytest.mark.parametrize("p", list(primerange(2, 14)))
    def test_unbounded_factorization_witness(self, p):
        """Test that 1 is a sum of p copies of 1/p."""
        witness = monoid_service.unbounded_factorization_witness(p)
        assert len(witness) == p
        assert sum(witness) == 1
        assert monoid_service.descending_chain_bound(1) == 1

    def test_witness_needs_prime(self):
        """Test that a composite raises."""
        with pytest.raises(InputError):
            monoid_service.unbounded_factorization_witness(4)


class TestFlattening:
    """Test integer flattenings of finitely generated monoids."""

    def test_orthant(self):
        """Test the sum map on N^2."""
        assert monoid_service.flattening_exists(monoid((1, 0), (0, 1))) == V(1, 1)

    def test_unit_pair(self):
        """Test that a monoid with units has no flattening."""
        assert monoid_service.flattening_exists(monoid((1, 0), (-1, 0))) is None

    def test_hirzebruch(self, hirzebruch_monoid):
        """Test an integral functional positive on the Hirzebruch degrees."""
        functional = monoid_service.flattening_exists(hirzebruch_monoid)
        assert functional == V(1, 3)
        assert functional.is_integral()

    def test_rational_generators_rejected(self):
        """Test that non-integer generators raise."""
        with pytest.raises(InputError):
            monoid_service.flattening_exists(monoid((Fraction(1, 2), 0)))

    def test_well_founded(self, hirzebruch_monoid):
        """Test the derived well-foundedness verdicts."""
        assert monoid_service.is_well_founded(hirzebruch_monoid) is True
        assert monoid_service.is_well_founded(monoid((1, 0), (-1, 0))) is None
        assert monoid_service.is_well_founded(BuiltinMonoid.PRIME_RECIPROCAL) is True


class TestBuiltinMonoids:
    """Test the infinitely generated built-ins."""

    def test_halfplane_membership(self):
        """Test the open upper half-plane plus the origin."""
        tag = BuiltinMonoid.HALFPLANE_PLUS_ORIGIN
        assert monoid_service.builtin_contains(tag, (0, 0))
        assert monoid_service.builtin_contains(tag, (-7, 1))
        assert not monoid_service.builtin_contains(tag, (1, 0))
        assert not monoid_service.builtin_contains(tag, (Fraction(1, 2), 1))

    def test_halfplane_lengths(self):
        """Test that the height m is also the longest factorization."""
        tag = BuiltinMonoid.HALFPLANE_PLUS_ORIGIN
        assert monoid_service.builtin_height(tag, (5, 3)) == 3
        assert monoid_service.builtin_max_factorization_length(tag, (5, 3)) == 3

    def test_prime_reciprocal(self):
        """Test the prime reciprocal monoid is not BF."""
        tag = BuiltinMonoid.PRIME_RECIPROCAL
        assert monoid_service.builtin_contains(tag, Fraction(5, 6))
        assert not monoid_service.builtin_contains(tag, Fraction(1, 4))
        assert not monoid_service.builtin_has_bounded_factorization(tag)
        assert monoid_service.builtin_height(tag, 1) is None
        assert monoid_service.builtin_max_factorization_length(tag, 1) is None

    def test_prime_shift(self):
        """Test the monoid generated by 1 and n + 1/p_n."""
        tag = BuiltinMonoid.PRIME_SHIFT
        assert monoid_service.builtin_contains(tag, Fraction(3, 2))
        assert not monoid_service.builtin_contains(tag, Fraction(1, 2))
        assert monoid_service.builtin_has_bounded_factorization(tag)
        assert monoid_service.builtin_max_factorization_length(tag, 3) == 3
        assert monoid_service.builtin_height(tag, Fraction(7, 3)) == 2

    def test_prime_shift_obstruction(self):
        """Test that phi(1) must be divisible by 2 * 3 * 5."""
        assert monoid_service.prime_shift_flattening_obstruction(3) == 30
        with pytest.raises(InputError):
            monoid_service.prime_shift_flattening_obstruction(0)

    def test_non_member_height(self):
        """Test that the height of a non-member raises."""
        with pytest.raises(NotMemberError):
            monoid_service.builtin_height(BuiltinMonoid.HALFPLANE_PLUS_ORIGIN, (1, -1))

    def test_wrong_dimension(self):
        """Test that a pair is not a prime-shift element."""
        with pytest.raises(DimensionMismatchError):
            monoid_service.builtin_contains(BuiltinMonoid.PRIME_SHIFT, (1, 1))
