"""Support monoid decisions: pointedness, bounded factorization, membership.

Finitely generated monoids are decided through positive functionals
(Gordan alternative); the three built-in infinitely generated monoids are
handled by closed-form predicates.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from math import floor, lcm
from typing import List, NamedTuple, Optional, Sequence, Tuple, Union

from sympy import factorint, isprime, prime, primorial

from app.errors import DimensionMismatchError, InputError, NotMemberError, NotPointedError
from app.models.exact import DegreeVector, RationalLike, to_rational
from app.models.monoid import (
    BuiltinMonoid,
    FgMonoid,
    HeightWitness,
    NonBfCertificate,
    relation_from_multiplicities,
)
from app.services.exactmath import iter_nonneg_solutions, positive_functional_or_certificate


logger = logging.getLogger(__name__)


class PointednessVerdict(NamedTuple):
    pointed: bool
    certificate: Optional[NonBfCertificate]


class FactorizationVerdict(NamedTuple):
    bounded: bool
    witness: Optional[HeightWitness]
    certificate: Optional[NonBfCertificate]


class PrimeReciprocalForm(NamedTuple):
    """q = whole + sum(h / p for p, h in parts) with 0 < h < p."""
    whole: int
    parts: Tuple[Tuple[int, int], ...]

    def value(self) -> Fraction:
        return Fraction(self.whole) + sum((Fraction(h, p) for p, h in self.parts), Fraction(0))


# Finitely generated monoids

@lru_cache(maxsize=256)
def has_bounded_factorization(monoid: FgMonoid) -> FactorizationVerdict:
    """BF verdict with a height witness, or a zero relation when BF fails.

    For finitely generated submonoids of Q^k, BF, pointedness and the
    existence of a positive functional coincide.
    """
    outcome = positive_functional_or_certificate(monoid.generators, monoid.dimension)
    if outcome.has_witness:
        witness = HeightWitness(outcome.witness, monoid.generators)
        return FactorizationVerdict(True, witness, None)
    multiplicities = outcome.certificate
    element = next(g for g, k in zip(monoid.generators, multiplicities) if k > 0)
    certificate = NonBfCertificate(element, relation_from_multiplicities(monoid.generators, multiplicities))
    logger.debug("monoid %s is not pointed: %s", monoid, certificate)
    return FactorizationVerdict(False, None, certificate)


def is_pointed(monoid: FgMonoid) -> PointednessVerdict:
    verdict = has_bounded_factorization(monoid)
    return PointednessVerdict(verdict.bounded, verdict.certificate)


def verify_height_witness(generators: Sequence[DegreeVector], functional: DegreeVector) -> bool:
    """True iff ``functional`` is at least 1 on every generator."""
    return all(functional.dot(generator) >= 1 for generator in generators)


def _require_witness(monoid: FgMonoid) -> HeightWitness:
    verdict = has_bounded_factorization(monoid)
    if not verdict.bounded:
        raise NotPointedError(
            f"monoid {monoid} is not pointed; membership search is unbounded",
            certificate=verdict.certificate,
        )
    return verdict.witness


def _check_element(monoid: FgMonoid, element: DegreeVector) -> None:
    if element.dimension != monoid.dimension:
        raise DimensionMismatchError(
            f"element {element} does not have dimension {monoid.dimension}"
        )


def member(monoid: FgMonoid, element: DegreeVector) -> bool:
    """Whether ``element`` is a nonnegative integer combination of generators."""
    _check_element(monoid, element)
    witness = _require_witness(monoid)
    if element.is_zero():
        return True
    height = witness.height(element)
    if height < 1:
        return False
    solutions = iter_nonneg_solutions(monoid.generators, element, floor(height), witness.functional)
    return next(solutions, None) is not None


def leq(monoid: FgMonoid, lower: DegreeVector, upper: DegreeVector) -> bool:
    """Divisibility order: lower + q = upper for some q in the monoid."""
    return member(monoid, upper - lower)


def max_factorization_length(monoid: FgMonoid, witness: HeightWitness, element: DegreeVector) -> int:
    _check_element(monoid, element)
    if not verify_height_witness(monoid.generators, witness.functional):
        raise InputError(f"{witness.functional} is not a height witness for {monoid}")
    if element.is_zero():
        return 0
    bound = floor(witness.height(element))
    if bound < 1:
        raise NotMemberError(f"{element} is not in the monoid {monoid}")
    lengths = [sum(x) for x in iter_nonneg_solutions(monoid.generators, element, bound, witness.functional)]
    if not lengths:
        raise NotMemberError(f"{element} is not in the monoid {monoid}")
    return max(lengths)


def flattening_exists(monoid: FgMonoid) -> Optional[DegreeVector]:
    """Integer functional positive on every generator, if one exists."""
    if not all(g.is_integral() for g in monoid.generators):
        raise InputError("flattening search needs integer generators")
    verdict = has_bounded_factorization(monoid)
    if not verdict.bounded:
        return None
    functional = verdict.witness.functional
    denominator = 1
    for entry in functional:
        denominator = lcm(denominator, entry.denominator)
    return functional.scale(denominator)


def is_well_founded(monoid: Union[FgMonoid, BuiltinMonoid]) -> Optional[bool]:
    """True when known to be well-founded, ``None`` when undecided.

    Only the implication from bounded factorization is used for finitely
    generated monoids; the built-ins carry their known answers.
    """
    if isinstance(monoid, BuiltinMonoid):
        return True
    return True if has_bounded_factorization(monoid).bounded else None


# Prime reciprocal monoid

def prime_reciprocal_canonical(value: RationalLike) -> Optional[PrimeReciprocalForm]:
    """Canonical form h1 + sum h_k/p_k with 0 < h_k < p_k, or None for non-members."""
    q = to_rational(value)
    if q < 0:
        raise InputError(f"{q} is negative; the prime reciprocal monoid lives in Q>=0")
    whole = floor(q)
    fractional = q - whole
    if fractional == 0:
        return PrimeReciprocalForm(whole, ())
    denominator = fractional.denominator
    factors = factorint(denominator)
    if any(exponent > 1 for exponent in factors.values()):
        return None
    parts = []
    for p in sorted(factors):
        cofactor = denominator // p
        residue = fractional.numerator * pow(cofactor, -1, p) % p
        parts.append((int(p), residue))
    carry = sum((Fraction(h, p) for p, h in parts), Fraction(0)) - fractional
    whole -= int(carry)
    if whole < 0:
        return None
    return PrimeReciprocalForm(whole, tuple(parts))


def descending_chain_bound(value: RationalLike) -> int:
    form = prime_reciprocal_canonical(value)
    if form is None:
        raise NotMemberError(f"{value} is not in the prime reciprocal monoid")
    return form.whole + sum(h for _, h in form.parts)


def unbounded_factorization_witness(p: int) -> List[Fraction]:
    """p copies of 1/p: a length-p factorization of 1."""
    if p < 2 or not isprime(p):
        raise InputError(f"{p} is not prime")
    return [Fraction(1, p)] * p


# Prime shift monoid: generated by 1 and n + 1/p_n

def _prime_shift_generators(limit: Fraction) -> List[DegreeVector]:
    generators = [DegreeVector.of(1)]
    n = 1
    while n + Fraction(1, prime(n)) <= limit:
        generators.append(DegreeVector.of(n + Fraction(1, prime(n))))
        n += 1
    return generators


def _prime_shift_lengths(q: Fraction) -> List[int]:
    if q < 0:
        return []
    if q == 0:
        return [0]
    generators = _prime_shift_generators(q)
    return [
        sum(x)
        for x in iter_nonneg_solutions(generators, DegreeVector.of(q), floor(q), DegreeVector.of(1))
    ]


def prime_shift_flattening_obstruction(n: int) -> int:
    """Divisor forced on phi(1) for any homomorphism phi to Z>=0.

    p_k * (k + 1/p_k) = (k p_k + 1) * 1, so p_k divides phi(1) for every
    k <= n.
    """
    if n < 1:
        raise InputError("n must be at least 1")
    return int(primorial(n))


# Built-in dispatch

def _as_builtin_element(tag: BuiltinMonoid, element) -> DegreeVector:
    if isinstance(element, DegreeVector):
        vector = element
    elif isinstance(element, (tuple, list)):
        vector = DegreeVector(tuple(element))
    else:
        vector = DegreeVector.of(element)
    if vector.dimension != tag.dimension:
        raise DimensionMismatchError(f"{tag.value} elements have dimension {tag.dimension}")
    return vector


def builtin_contains(tag: BuiltinMonoid, element) -> bool:
    tag = BuiltinMonoid(tag)
    vector = _as_builtin_element(tag, element)
    if tag is BuiltinMonoid.HALFPLANE_PLUS_ORIGIN:
        return vector.is_zero() or (vector.is_integral() and vector[1] > 0)
    if tag is BuiltinMonoid.PRIME_RECIPROCAL:
        return vector[0] >= 0 and prime_reciprocal_canonical(vector[0]) is not None
    return bool(_prime_shift_lengths(vector[0]))


def builtin_has_bounded_factorization(tag: BuiltinMonoid) -> bool:
    return BuiltinMonoid(tag) is not BuiltinMonoid.PRIME_RECIPROCAL


def builtin_height(tag: BuiltinMonoid, element) -> Optional[int]:
    """Value of the built-in height function, None where none exists."""
    tag = BuiltinMonoid(tag)
    vector = _as_builtin_element(tag, element)
    if not builtin_contains(tag, vector):
        raise NotMemberError(f"{vector} is not in the {tag.value} monoid")
    if tag is BuiltinMonoid.HALFPLANE_PLUS_ORIGIN:
        return int(vector[1])
    if tag is BuiltinMonoid.PRIME_SHIFT:
        return floor(vector[0])
    return None


def builtin_max_factorization_length(tag: BuiltinMonoid, element) -> Optional[int]:
    """Longest factorization; None means lengths are unbounded."""
    tag = BuiltinMonoid(tag)
    vector = _as_builtin_element(tag, element)
    if not builtin_contains(tag, vector):
        raise NotMemberError(f"{vector} is not in the {tag.value} monoid")
    if tag is BuiltinMonoid.HALFPLANE_PLUS_ORIGIN:
        return int(vector[1])
    if tag is BuiltinMonoid.PRIME_SHIFT:
        return max(_prime_shift_lengths(vector[0]))
    return 0 if vector.is_zero() else None
