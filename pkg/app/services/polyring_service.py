"""Grading operations on multigraded polynomial rings."""

import logging
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Tuple, Union

from app.errors import DimensionMismatchError, InputError
from app.models.exact import DegreeVector, RationalLike, sum_vectors, to_rational
from app.models.monoid import FgMonoid
from app.models.report import DegreeSequence
from app.models.ring import GradingSpec, IdealPresentation, MGPolyRing, Polynomial
from app.services import monoid_service


logger = logging.getLogger(__name__)

ExponentLike = Union[Sequence[int], Mapping[int, int]]
RationalMatrix = Sequence[Sequence[RationalLike]]


def _dense_exponent(ring: MGPolyRing, exponent: ExponentLike) -> Tuple[int, ...]:
    if isinstance(exponent, Mapping):
        dense = [0] * ring.nvars
        for index, power in exponent.items():
            if not 0 <= index < ring.nvars:
                raise InputError(f"unknown variable index {index}")
            dense[index] = int(power)
    else:
        dense = [int(e) for e in exponent]
        if len(dense) != ring.nvars:
            raise InputError(f"exponent has {len(dense)} entries, ring has {ring.nvars} variables")
    if any(e < 0 for e in dense):
        raise InputError(f"negative exponent in {tuple(dense)}")
    return tuple(dense)


def monomial_degree(ring: MGPolyRing, exponent: ExponentLike) -> DegreeVector:
    """sum e_i deg(x_i); accepts a dense tuple or a sparse index -> power map."""
    dense = _dense_exponent(ring, exponent)
    return sum_vectors(
        (ring.degree_of(i).scale(e) for i, e in enumerate(dense) if e), ring.rank
    )


def polynomial_degrees(ring: MGPolyRing, polynomial: Polynomial) -> Tuple[DegreeVector, ...]:
    return tuple(monomial_degree(ring, exponent) for exponent in polynomial.monomials)


def is_homogeneous(ring: MGPolyRing, polynomial: Polynomial) -> Optional[DegreeVector]:
    """The common degree of every monomial, or None."""
    if polynomial.is_zero():
        raise InputError("the zero polynomial has no degree")
    degrees = set(polynomial_degrees(ring, polynomial))
    return degrees.pop() if len(degrees) == 1 else None


def zero_degree_variables(ring: MGPolyRing) -> Tuple[int, ...]:
    return tuple(i for i, degree in enumerate(ring.grading.degrees) if degree.is_zero())


def support_monoid(ring: MGPolyRing) -> FgMonoid:
    """Monoid generated by the variable degrees; zero degrees are dropped."""
    return FgMonoid(ring.rank, ring.grading.degrees)


def is_connected(ring: MGPolyRing) -> bool:
    """No degree-0 variable and a pointed support."""
    if zero_degree_variables(ring):
        return False
    return monoid_service.is_pointed(support_monoid(ring)).pointed


def degree_sequence_check(ideal: IdealPresentation, degrees: Union[DegreeSequence, Sequence[DegreeVector]]) -> bool:
    """Every monomial of f_i has degree <= d_i in the support order."""
    bounds = degrees.degrees if isinstance(degrees, DegreeSequence) else tuple(degrees)
    if len(bounds) != len(ideal.generators):
        raise InputError(
            f"{len(bounds)} degree bounds for {len(ideal.generators)} generators"
        )
    ring = ideal.ring
    for bound in bounds:
        if bound.dimension != ring.rank:
            raise DimensionMismatchError(f"degree bound {bound} does not have dimension {ring.rank}")
    monoid = support_monoid(ring)
    for generator, bound in zip(ideal.generators, bounds):
        for degree in set(polynomial_degrees(ring, generator)):
            if not monoid_service.leq(monoid, degree, bound):
                logger.debug("monomial degree %s is not below %s", degree, bound)
                return False
    return True


def apply_hom(hom: RationalMatrix, degree: DegreeVector) -> DegreeVector:
    return DegreeVector(tuple(sum((to_rational(a) * b for a, b in zip(row, degree)), Fraction(0)) for row in hom))


def regrade(ring: MGPolyRing, hom: RationalMatrix) -> MGPolyRing:
    """Push every variable degree through the k' x k matrix ``hom``."""
    rows = [tuple(to_rational(a) for a in row) for row in hom]
    if not rows:
        raise DimensionMismatchError("regrading matrix has no rows")
    for row in rows:
        if len(row) != ring.rank:
            raise DimensionMismatchError(
                f"regrading matrix row has {len(row)} entries, grading has dimension {ring.rank}"
            )
    degrees = tuple(apply_hom(rows, degree) for degree in ring.grading.degrees)
    return ring.with_grading(GradingSpec(len(rows), degrees))


def is_positive_grading(ring: MGPolyRing) -> bool:
    """A Z- or Q-grading with every variable in positive degree."""
    return ring.rank == 1 and all(degree[0] > 0 for degree in ring.grading.degrees)


def _fresh_names(used: Sequence[str], count: int, prefix: str = "t") -> Tuple[str, ...]:
    taken = set(used)
    names = []
    index = 1
    while len(names) < count:
        candidate = f"{prefix}{index}"
        if candidate not in taken:
            names.append(candidate)
        index += 1
    return tuple(names)


def adjoin_support_variables(ring: MGPolyRing, targets: Sequence[DegreeVector]) -> MGPolyRing:
    """Add one fresh variable for each target degree no variable has yet."""
    wanted = []
    for target in targets:
        if target.dimension != ring.rank:
            raise DimensionMismatchError(f"target {target} does not have dimension {ring.rank}")
        if target not in wanted:
            wanted.append(target)
    present = set(support_monoid(ring).generators)
    missing_from_target = present.difference(wanted)
    if missing_from_target:
        raise InputError(
            "target generators do not contain the current support generator(s) "
            + ", ".join(str(g) for g in missing_from_target)
        )
    new_degrees = [g for g in wanted if g not in present and not g.is_zero()]
    if not new_degrees:
        return ring
    names = _fresh_names(ring.variables, len(new_degrees))
    grading = GradingSpec(ring.rank, ring.grading.degrees + tuple(new_degrees))
    logger.debug("adjoining %s of degrees %s", names, [str(g) for g in new_degrees])
    return MGPolyRing(ring.variables + names, grading, ring.field)


def embed_polynomial(polynomial: Polynomial, ring: MGPolyRing) -> Polynomial:
    """Same polynomial read in a ring with extra trailing variables."""
    extra = ring.nvars - polynomial.nvars
    if extra < 0:
        raise InputError("target ring has fewer variables")
    return Polynomial(
        ring.field, ring.nvars, tuple((e + (0,) * extra, c) for e, c in polynomial.terms)
    )
