"""Stillman bound analysis, counterexample families and grading refinement."""

import logging
import re
import threading
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from math import floor
from pathlib import Path
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from app.config import Settings, get_settings
from app.errors import AnalysisRejected, InhomogeneousError, InputError
from app.models.exact import DegreeVector, sum_vectors
from app.models.monoid import FgMonoid, HeightWitness
from app.models.report import BoundReport, DegreeSequence, FactorizationCert
from app.models.ring import CoefficientField, GradingSpec, IdealPresentation, MGPolyRing, Polynomial
from app.services import monoid_service, polyring_service
from app.services.exactmath import integral_scaling, positive_functional_or_certificate, snf, solve_linear
from app.services.resolution_service import ResolutionService, weighted_degree


logger = logging.getLogger(__name__)


def _default_field(field: Optional[CoefficientField]) -> CoefficientField:
    return field if field is not None else CoefficientField.parse(get_settings().default_field)


def _product(ring: MGPolyRing, names: Sequence[str]) -> Polynomial:
    result = ring.constant(1)
    for name in names:
        result = result * ring.var(name)
    return result


# Flattening

def flatten_degree_bound(
    witness: HeightWitness, degree: DegreeVector, generators: Optional[Sequence[DegreeVector]] = None
) -> int:
    """N = floor(w . d): no monomial of degree <= d has more than N factors."""
    if generators is not None and not monoid_service.verify_height_witness(generators, witness.functional):
        raise InputError(f"{witness.functional} is not a height witness for the given generators")
    return floor(witness.height(degree))


# Families

def mccullough_family(n: int, connected: bool = True, field: Optional[CoefficientField] = None) -> IdealPresentation:
    """<x^n, y^n, sum x^(n-i) y^(i-1) z_i> in k[x, y, z_1..z_n].

    Every variable has degree 1/n. With ``connected=False`` x and y get
    degree 0 and each z_i degree 1 instead.
    """
    if n < 1:
        raise InputError("the McCullough family needs n >= 1")
    variables = ("x", "y") + tuple(f"z{i}" for i in range(1, n + 1))
    if connected:
        degrees = tuple(DegreeVector.of(Fraction(1, n)) for _ in variables)
    else:
        degrees = (DegreeVector.of(0), DegreeVector.of(0)) + tuple(DegreeVector.of(1) for _ in range(n))
    ring = MGPolyRing(variables, GradingSpec(1, degrees), _default_field(field))
    x, y = ring.var("x"), ring.var("y")
    third = ring.constant(0)
    for i in range(1, n + 1):
        third = third + x ** (n - i) * y ** (i - 1) * ring.var(f"z{i}")
    return IdealPresentation(ring, (x ** n, y ** n, third))


def burch_kohn_family(
    n: int, degrees: Optional[Sequence[DegreeVector]] = None, field: Optional[CoefficientField] = None
) -> IdealPresentation:
    """f1 = prod x_i, f2 = prod y_i, f3 = sum_i prod_(j != i) x_j y_j.

    ``degrees`` sets deg x_i = deg y_i = degrees[i]; the default is the
    standard grading.
    """
    if n < 2:
        raise InputError("the Burch-Kohn family needs n >= 2 (n = 1 gives the unit ideal)")
    xs = tuple(f"x{i}" for i in range(1, n + 1))
    ys = tuple(f"y{i}" for i in range(1, n + 1))
    if degrees is None:
        grading = GradingSpec.standard(2 * n)
    else:
        degrees = tuple(degrees)
        if len(degrees) != n:
            raise InputError(f"need {n} degrees, got {len(degrees)}")
        grading = GradingSpec(degrees[0].dimension, degrees + degrees)
    ring = MGPolyRing(xs + ys, grading, _default_field(field))
    f1 = _product(ring, xs)
    f2 = _product(ring, ys)
    f3 = ring.constant(0)
    for i in range(n):
        f3 = f3 + _product(ring, [name for j in range(n) if j != i for name in (xs[j], ys[j])])
    return IdealPresentation(ring, (f1, f2, f3))


class Counterexample(NamedTuple):
    ring: MGPolyRing
    ideal: IdealPresentation
    factorization: FactorizationCert


def _group_parts(parts: List[DegreeVector], count: int) -> List[DegreeVector]:
    """Merge parts until ``count`` remain, never creating a zero part.

    Adjacent parts are tried left to right first; when every adjacent sum
    vanishes the first non-adjacent pair with a nonzero sum is merged.
    """
    parts = list(parts)
    while len(parts) > count:
        adjacent = next((i for i in range(len(parts) - 1) if not (parts[i] + parts[i + 1]).is_zero()), None)
        if adjacent is not None:
            parts[adjacent:adjacent + 2] = [parts[adjacent] + parts[adjacent + 1]]
            continue
        i, j = next(
            (i, j)
            for i in range(len(parts))
            for j in range(i + 2, len(parts))
            if not (parts[i] + parts[j]).is_zero()
        )
        parts[i] = parts[i] + parts[j]
        del parts[j]
    return parts


def non_bf_counterexample(
    monoid: FgMonoid, b: int, field: Optional[CoefficientField] = None
) -> Counterexample:
    """Burch-Kohn ideal graded by a length-b factorization in a non-BF monoid.

    The zero relation is repeated until there are at least b parts, one
    generator is appended so the total is nonzero, and parts are grouped
    down to exactly b.
    """
    if b < 2:
        raise InputError("b must be at least 2")
    verdict = monoid_service.has_bounded_factorization(monoid)
    if verdict.bounded:
        raise AnalysisRejected(
            f"monoid {monoid} has bounded factorization (witness {verdict.witness.functional}); "
            "no Stillman counterexample exists"
        )
    relation = [g for g, k in verdict.certificate.relation for _ in range(k)]
    base = next((g for g, k in verdict.certificate.relation if k == 0), monoid.generators[0])
    parts: List[DegreeVector] = []
    while len(parts) < b:
        parts.extend(relation)
    parts.append(base)
    grouped = _group_parts(parts, b)
    target = sum_vectors(grouped, monoid.dimension)
    factorization = FactorizationCert(target, tuple(grouped))
    ideal = burch_kohn_family(b, degrees=grouped, field=field)
    logger.debug("counterexample for %s: %s = %s", monoid, target, " + ".join(str(p) for p in grouped))
    return Counterexample(ideal.ring, ideal, factorization)


# Catalogue

def hirzebruch_cox_ring(field: Optional[CoefficientField] = None) -> MGPolyRing:
    degrees = (DegreeVector.of(1, 0), DegreeVector.of(-2, 1), DegreeVector.of(1, 0), DegreeVector.of(0, 1))
    return MGPolyRing(("x0", "x1", "x2", "x3"), GradingSpec(2, degrees), _default_field(field))


def halfplane_ring(n: int, field: Optional[CoefficientField] = None) -> MGPolyRing:
    """k[x_1..x_n, y_1..y_n] with deg x_i = (-i, 1) and deg y_i = (i, 1)."""
    if n < 1:
        raise InputError("n must be at least 1")
    variables = tuple(f"x{i}" for i in range(1, n + 1)) + tuple(f"y{i}" for i in range(1, n + 1))
    degrees = tuple(DegreeVector.of(-i, 1) for i in range(1, n + 1)) + tuple(
        DegreeVector.of(i, 1) for i in range(1, n + 1)
    )
    return MGPolyRing(variables, GradingSpec(2, degrees), _default_field(field))


def three_cubics_ideal(grading: str = "standard", field: Optional[CoefficientField] = None) -> IdealPresentation:
    """<x1x4x7 + x10x13x16, x2x5x8 + x11x14x17, x3x6x9 + x12x15x18>.

    ``grading="fine"`` grades x_i by its residue class mod 3 in Z^3.
    """
    variables = tuple(f"x{i}" for i in range(1, 19))
    if grading == "standard":
        degrees = GradingSpec.standard(18)
    elif grading == "fine":
        degrees = GradingSpec(3, tuple(DegreeVector.unit(3, (i - 1) % 3) for i in range(1, 19)))
    else:
        raise InputError(f"unknown grading {grading!r}; expected 'standard' or 'fine'")
    ring = MGPolyRing(variables, degrees, _default_field(field))
    generators = tuple(
        _product(ring, [f"x{k}" for k in (s, s + 3, s + 6)]) + _product(ring, [f"x{k}" for k in (s + 9, s + 12, s + 15)])
        for s in (1, 2, 3)
    )
    return IdealPresentation(ring, generators)


# Finest grading

def _relation_rows(generators: Sequence[Polynomial]) -> List[List[int]]:
    rows = []
    for generator in generators:
        monomials = generator.monomials
        for exponent in monomials[1:]:
            rows.append([a - b for a, b in zip(exponent, monomials[0])])
    return rows


def finest_grading(generators: Sequence[Polynomial], nvars: Optional[int] = None) -> GradingSpec:
    """Universal grading under which every generator is homogeneous.

    The exponent differences inside each generator span a lattice D; the
    grading group is the free part of Z^n / D, read off the Smith normal
    form. Torsion invariants are recorded on the result and dropped.
    """
    if not generators and nvars is None:
        raise InputError("need generators or a variable count")
    for generator in generators:
        if generator.is_zero():
            raise InputError("generators must be nonzero")
    n = nvars if nvars is not None else generators[0].nvars
    rows = _relation_rows(generators)
    if not rows:
        return GradingSpec(n, tuple(DegreeVector.unit(n, i) for i in range(n)))
    _, diagonal, v = snf(rows)
    pivots = [diagonal[i][i] for i in range(min(len(rows), n)) if diagonal[i][i] != 0]
    rank = len(pivots)
    torsion = tuple(d for d in pivots if d > 1)
    degrees = tuple(DegreeVector(tuple(v[j][rank:])) for j in range(n))
    grading = GradingSpec(n - rank, degrees, torsion)
    ring = MGPolyRing(tuple(f"v{i}" for i in range(n)), grading, generators[0].field)
    for generator in generators:
        if polyring_service.is_homogeneous(ring, generator) is None:
            raise ArithmeticError("finest grading does not make a generator homogeneous")
    logger.debug("finest grading: rank %d, torsion %s", grading.dimension, torsion)
    return grading


def coarsening_map(finest: GradingSpec, grading: GradingSpec) -> Optional[List[List[Fraction]]]:
    """Matrix H (k_fine x k) with deg_grading(x_j) = H^T deg_finest(x_j), if any."""
    if finest.num_variables != grading.num_variables:
        raise InputError("gradings assign degrees to different numbers of variables")
    fine_rows = [list(d.entries) for d in finest.degrees]
    target_rows = [list(d.entries) for d in grading.degrees]
    if finest.dimension == 0:
        return [] if all(all(x == 0 for x in row) for row in target_rows) else None
    if grading.dimension == 0:
        return [[] for _ in range(finest.dimension)]
    return solve_linear(fine_rows, target_rows)


class Refinement(NamedTuple):
    grading: GradingSpec
    refined_degrees: Tuple[DegreeVector, ...]
    coarsening: Optional[List[List[Fraction]]]


def refine(ideal: IdealPresentation) -> Refinement:
    """Finest grading, the generator degrees in it and the map onto the ring's own grading."""
    finest = finest_grading(ideal.generators, ideal.ring.nvars)
    fine_ring = ideal.ring.with_grading(finest)
    refined = tuple(polyring_service.monomial_degree(fine_ring, g.monomials[0]) for g in ideal.generators)
    return Refinement(finest, refined, coarsening_map(finest, ideal.ring.grading))


def find_homogenizing_weight(ideal: IdealPresentation) -> Optional[Tuple[int, ...]]:
    """Positive integer weights making every generator homogeneous, if any exist."""
    grading = finest_grading(ideal.generators, ideal.ring.nvars)
    if any(degree.is_zero() for degree in grading.degrees):
        return None
    outcome = positive_functional_or_certificate(grading.degrees, grading.dimension)
    if not outcome.has_witness:
        return None
    return tuple(integral_scaling([degree.dot(outcome.witness) for degree in grading.degrees]))


# Known bounds

_BOUND_LINE = re.compile(r"^\(\s*([\d\s,]+)\)\s*(?:->|→)\s*(\d+)\s*$")


@dataclass
class KnownBoundsTable:
    """Effective standard-graded Stillman bounds keyed by degree sequence."""

    entries: Dict[Tuple[int, ...], int] = dataclass_field(default_factory=dict)

    @classmethod
    def parse(cls, text: str) -> "KnownBoundsTable":
        entries = {}
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            match = _BOUND_LINE.match(line)
            if not match:
                raise InputError(f"known bounds line {number}: cannot parse {raw!r}")
            key = tuple(sorted((int(part) for part in match.group(1).split(",") if part.strip()), reverse=True))
            entries[key] = int(match.group(2))
        return cls(entries)

    @classmethod
    def load(cls, path: str) -> "KnownBoundsTable":
        return cls.parse(Path(path).read_text(encoding="utf-8"))

    def lookup(self, degrees: Sequence[int]) -> Optional[int]:
        return self.entries.get(tuple(sorted(degrees, reverse=True)))


# Report

class StillmanService:
    """Assembles bound reports for ideals in graded polynomial rings."""

    def __init__(
        self,
        settings: Optional[Settings] = None,
        resolution: Optional[ResolutionService] = None,
        known_bounds: Optional[KnownBoundsTable] = None,
    ):
        self.settings = settings or get_settings()
        self.resolution = resolution or ResolutionService(self.settings)
        self._known_bounds = known_bounds

    @property
    def known_bounds(self) -> KnownBoundsTable:
        if self._known_bounds is None:
            self._known_bounds = KnownBoundsTable.load(self.settings.known_bounds_path)
        return self._known_bounds

    def _check_connected(self, ring: MGPolyRing) -> monoid_service.FactorizationVerdict:
        zero = polyring_service.zero_degree_variables(ring)
        if zero:
            names = ", ".join(ring.variables[i] for i in zero)
            logger.info("rejecting non-connected grading: %s in degree 0", names)
            raise AnalysisRejected(
                f"grading is not connected: {names} in degree 0, so no Stillman bound exists"
            )
        support = polyring_service.support_monoid(ring)
        verdict = monoid_service.has_bounded_factorization(support)
        if not verdict.bounded:
            logger.info("support %s has no bounded factorization: %s", support, verdict.certificate)
        return verdict

    def _pdim_weight(self, ideal: IdealPresentation) -> Optional[Tuple[int, ...]]:
        ones = (1,) * ideal.ring.nvars
        if all(weighted_degree(g, ones) is not None for g in ideal.generators):
            return ones
        return find_homogenizing_weight(ideal)

    def stillman_report(
        self,
        ideal: IdealPresentation,
        degrees: Optional[DegreeSequence] = None,
        compute_pdim: bool = True,
        cancel_event: Optional[threading.Event] = None,
    ) -> BoundReport:
        ring = ideal.ring
        verdict = self._check_connected(ring)
        if not verdict.bounded:
            return BoundReport.unbounded(
                verdict.certificate,
                notes=("support has no bounded factorization, so no Stillman bound exists for this grading",),
            )
        witness = verdict.witness
        notes: List[str] = []

        if degrees is not None:
            if not polyring_service.degree_sequence_check(ideal, degrees):
                raise InputError(f"ideal does not have degree sequence bounded by {degrees}")
            flatten_bounds = tuple(flatten_degree_bound(witness, d) for d in degrees.degrees)
        else:
            flatten_bounds = tuple(
                max(flatten_degree_bound(witness, d) for d in polyring_service.polynomial_degrees(ring, g))
                for g in ideal.generators
            )
        flattened = tuple(g.total_degree() for g in ideal.generators)

        ones = (1,) * ring.nvars
        known = None
        if all(weighted_degree(g, ones) is not None for g in ideal.generators):
            known = self.known_bounds.lookup(flattened)
        else:
            notes.append("generators are not standard homogeneous; known-bound table skipped")

        hilbert = len(ideal.used_variables())

        pdim = None
        weight = None
        betti = None
        regular = None
        if compute_pdim:
            weight = self._pdim_weight(ideal)
            if weight is None:
                notes.append("no positive weight makes the generators homogeneous; pdim not computed")
            else:
                try:
                    minimal, betti = self.resolution.minimalize(
                        self.resolution.free_resolution(ideal, weight, cancel_event)
                    )
                except InhomogeneousError:
                    weight = None
                    notes.append("pdim not computed")
                else:
                    pdim = minimal.length
                    regular = self.resolution.is_koszul(minimal, ideal.generators)

        finest, refined, _ = refine(ideal)

        return BoundReport(
            support_bf=True,
            witness=witness.functional,
            certificate=None,
            flatten_bounds=flatten_bounds,
            flattened_degrees=flattened,
            known_bound=known,
            hilbert_bound=hilbert,
            pdim=pdim,
            pdim_weight=weight if pdim is not None else None,
            regular_sequence=regular,
            finest_rank=finest.dimension,
            finest_torsion=finest.torsion,
            refined_degrees=refined,
            betti=betti,
            notes=tuple(notes),
        )
