"""Gröbner bases of ideals and submodules, syzygies and Schreyer frames.

Module elements are stored sparsely as ``{(component, exponent): coefficient}``.
A polynomial is the rank-1 case with component 0. Exponents are dense
tuples, one entry per ring variable.
"""

import heapq
import logging
import threading
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Set, Tuple, Union

from app.config import get_settings
from app.errors import ComputationCancelled, InputError, ResourceLimitExceeded
from app.models.resolution import TermOrder
from app.models.ring import Coefficient, CoefficientField, Exponent, Polynomial


logger = logging.getLogger(__name__)

Term = Tuple[int, Exponent]
Vector = Dict[Term, Coefficient]
ModuleElement = Tuple[Polynomial, ...]


class Position(str, Enum):
    """How basis positions compare against monomials in a free module."""
    POT = "pot"     # position over term; e_0 > e_1 > ...
    TOP = "top"     # term over position


@dataclass(frozen=True)
class ModuleOrder:
    """Monomial order on a free module.

    With ``shifts`` set this is the Schreyer order: x^a e_j is compared by
    the monomial x^(a + shifts[j]) first and then by ``paths[j]``, which
    records the basis indices of all ancestors (smaller index is larger).
    """

    term_order: TermOrder
    position: Position = Position.POT
    shifts: Optional[Tuple[Exponent, ...]] = None
    paths: Optional[Tuple[Tuple[int, ...], ...]] = None

    @classmethod
    def schreyer(
        cls, term_order: TermOrder, shifts: Sequence[Exponent], paths: Sequence[Tuple[int, ...]]
    ) -> "ModuleOrder":
        return cls(term_order, Position.POT, tuple(shifts), tuple(paths))

    def key(self, component: int, exponent: Exponent) -> tuple:
        if self.shifts is not None:
            return (self.term_order.key(_plus(exponent, self.shifts[component])), self.paths[component])
        if self.position is Position.TOP:
            return (self.term_order.key(exponent), -component)
        return (-component, self.term_order.key(exponent))


@dataclass
class _Element:
    vector: Vector
    lead: Term
    rep: Optional[Vector] = None   # the same element written in the input generators


# Monomial helpers

def _plus(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def _minus(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _check_cancelled(cancel_event: Optional[threading.Event]) -> None:
    if cancel_event is not None and cancel_event.is_set():
        raise ComputationCancelled("computation cancelled by caller")


# Vector arithmetic

def _lead_term(vector: Vector, order: ModuleOrder) -> Term:
    return max(vector, key=lambda term: order.key(*term))


def _add_term(vector: Vector, term: Term, value: Coefficient, field: CoefficientField) -> None:
    total = field.add(vector.get(term, field.zero()), value)
    if field.is_zero(total):
        vector.pop(term, None)
    else:
        vector[term] = total


def _add_multiple(
    target: Vector, source: Vector, factor: Coefficient, shift: Exponent, field: CoefficientField
) -> None:
    """target += factor * x^shift * source, in place."""
    for (component, exponent), coefficient in source.items():
        _add_term(target, (component, _plus(exponent, shift)), field.mul(factor, coefficient), field)


def _scaled(vector: Vector, factor: Coefficient, field: CoefficientField) -> Vector:
    return {term: field.mul(factor, c) for term, c in vector.items()}


def _reduce(
    vector: Vector,
    basis: Sequence[_Element],
    order: ModuleOrder,
    field: CoefficientField,
    quotients: Optional[List[Dict[Exponent, Coefficient]]] = None,
) -> Vector:
    """Full reduction of ``vector`` by ``basis``; returns the remainder.

    When ``quotients`` is given, quotients[t][shift] accumulates the
    multiple of x^shift * basis[t] that was subtracted.
    """
    by_component: Dict[int, List[int]] = {}
    for index, element in enumerate(basis):
        by_component.setdefault(element.lead[0], []).append(index)
    work = dict(vector)
    remainder: Vector = {}
    while work:
        lead = _lead_term(work, order)
        coefficient = work[lead]
        component, exponent = lead
        divisor = next(
            (t for t in by_component.get(component, ()) if _divides(basis[t].lead[1], exponent)),
            None,
        )
        if divisor is None:
            remainder[lead] = coefficient
            del work[lead]
            continue
        element = basis[divisor]
        factor = field.div(coefficient, element.vector[element.lead])
        shift = _minus(exponent, element.lead[1])
        _add_multiple(work, element.vector, field.neg(factor), shift, field)
        if quotients is not None:
            quotient = quotients[divisor]
            total = field.add(quotient.get(shift, field.zero()), factor)
            if field.is_zero(total):
                quotient.pop(shift, None)
            else:
                quotient[shift] = total
    return remainder


def _s_vector(a: _Element, b: _Element, field: CoefficientField):
    """(S, (shift_a, 1/lc_a), (shift_b, 1/lc_b)) for two elements with the same lead component."""
    m = _lcm(a.lead[1], b.lead[1])
    shift_a, shift_b = _minus(m, a.lead[1]), _minus(m, b.lead[1])
    factor_a = field.inv(a.vector[a.lead])
    factor_b = field.inv(b.vector[b.lead])
    s: Vector = {}
    _add_multiple(s, a.vector, factor_a, shift_a, field)
    _add_multiple(s, b.vector, field.neg(factor_b), shift_b, field)
    return s, (shift_a, factor_a), (shift_b, factor_b)


def _combine_reps(
    a: _Element, b: _Element, shifts, quotients, basis: Sequence[_Element], field: CoefficientField
) -> Vector:
    (shift_a, factor_a), (shift_b, factor_b) = shifts
    rep: Vector = {}
    _add_multiple(rep, a.rep, factor_a, shift_a, field)
    _add_multiple(rep, b.rep, field.neg(factor_b), shift_b, field)
    for t, quotient in enumerate(quotients):
        for shift, factor in quotient.items():
            _add_multiple(rep, basis[t].rep, field.neg(factor), shift, field)
    return rep


def _make_monic(element: _Element, field: CoefficientField) -> _Element:
    factor = field.inv(element.vector[element.lead])
    if field.is_one(factor):
        return element
    rep = _scaled(element.rep, factor, field) if element.rep is not None else None
    return _Element(_scaled(element.vector, factor, field), element.lead, rep)


# Buchberger

def _chain_criterion(a: int, b: int, m: Exponent, basis: Sequence[_Element], pending: Set[Tuple[int, int]]) -> bool:
    component = basis[a].lead[0]
    for t, element in enumerate(basis):
        if t in (a, b) or element.lead[0] != component or not _divides(element.lead[1], m):
            continue
        if (min(a, t), max(a, t)) not in pending and (min(b, t), max(b, t)) not in pending:
            return True
    return False


def _buchberger(
    elements: Sequence[_Element],
    order: ModuleOrder,
    field: CoefficientField,
    *,
    product_criterion: bool,
    max_pair_queue: int,
    cancel_event: Optional[threading.Event],
) -> List[_Element]:
    """Buchberger's algorithm with the normal selection strategy."""
    basis: List[_Element] = []
    pending: Set[Tuple[int, int]] = set()
    queue: list = []
    track = all(element.rep is not None for element in elements)

    def add(element: _Element) -> None:
        index = len(basis)
        basis.append(element)
        for other in range(index):
            if basis[other].lead[0] != element.lead[0]:
                continue
            m = _lcm(basis[other].lead[1], element.lead[1])
            pending.add((other, index))
            heapq.heappush(queue, (order.key(element.lead[0], m), other, index))
        if len(pending) > max_pair_queue:
            raise ResourceLimitExceeded(
                f"Gröbner pair queue exceeded {max_pair_queue} pairs"
            )

    for element in elements:
        add(_make_monic(element, field))
    reductions = 0
    while queue:
        _check_cancelled(cancel_event)
        _, a, b = heapq.heappop(queue)
        pending.discard((a, b))
        lead_a, lead_b = basis[a].lead[1], basis[b].lead[1]
        m = _lcm(lead_a, lead_b)
        if product_criterion and m == _plus(lead_a, lead_b):
            continue
        if _chain_criterion(a, b, m, basis, pending):
            continue
        s, shift_a, shift_b = _s_vector(basis[a], basis[b], field)
        quotients = [dict() for _ in basis] if track else None
        remainder = _reduce(s, basis, order, field, quotients)
        reductions += 1
        if not remainder:
            continue
        rep = _combine_reps(basis[a], basis[b], (shift_a, shift_b), quotients, basis, field) if track else None
        add(_make_monic(_Element(remainder, _lead_term(remainder, order), rep), field))
    logger.debug("Buchberger: %d inputs, %d basis elements, %d reductions", len(elements), len(basis), reductions)
    return basis


def _reduced_basis(basis: Sequence[_Element], order: ModuleOrder, field: CoefficientField) -> List[_Element]:
    """Minimal, interreduced, monic, sorted by descending lead."""
    kept = []
    for i, element in enumerate(basis):
        component, exponent = element.lead
        redundant = any(
            j != i
            and other.lead[0] == component
            and _divides(other.lead[1], exponent)
            and (other.lead[1] != exponent or j < i)
            for j, other in enumerate(basis)
        )
        if not redundant:
            kept.append(element)
    reduced = []
    for i, element in enumerate(kept):
        others = kept[:i] + kept[i + 1:]
        tail = {term: c for term, c in element.vector.items() if term != element.lead}
        vector = _reduce(tail, others, order, field)
        vector[element.lead] = element.vector[element.lead]
        reduced.append(_make_monic(_Element(vector, element.lead), field))
    reduced.sort(key=lambda e: order.key(*e.lead), reverse=True)
    return reduced


def _is_groebner(basis: Sequence[_Element], order: ModuleOrder, field: CoefficientField) -> bool:
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            if basis[a].lead[0] != basis[b].lead[0]:
                continue
            s, _, _ = _s_vector(basis[a], basis[b], field)
            if _reduce(s, basis, order, field):
                return False
    return True


# Conversions

def _as_vectors(generators: Sequence[Union[Polynomial, Sequence[Polynomial]]]):
    """Vectors, rank, field and variable count of polynomial or module input."""
    if not generators:
        raise InputError("at least one generator is required")
    vectors: List[Vector] = []
    rank: Optional[int] = None
    field: Optional[CoefficientField] = None
    nvars: Optional[int] = None
    for generator in generators:
        entries = (generator,) if isinstance(generator, Polynomial) else tuple(generator)
        if rank is None:
            rank = len(entries)
        elif rank != len(entries):
            raise InputError("module elements have different ranks")
        vector: Vector = {}
        for component, polynomial in enumerate(entries):
            if field is None:
                field, nvars = polynomial.field, polynomial.nvars
            elif polynomial.field != field or polynomial.nvars != nvars:
                raise InputError("generators live in different rings")
            for exponent, coefficient in polynomial.terms:
                vector[(component, exponent)] = coefficient
        if not vector:
            raise InputError("generators must be nonzero")
        vectors.append(vector)
    return vectors, rank, field, nvars


def _to_polynomials(vector: Vector, rank: int, field: CoefficientField, nvars: int) -> ModuleElement:
    components: List[Dict[Exponent, Coefficient]] = [dict() for _ in range(rank)]
    for (component, exponent), coefficient in vector.items():
        components[component][exponent] = coefficient
    return tuple(Polynomial(field, nvars, terms) for terms in components)


def _elements(
    vectors: Sequence[Vector], order: ModuleOrder, field: CoefficientField, track: bool, nvars: int
) -> List[_Element]:
    zero: Exponent = (0,) * nvars
    return [
        _Element(vector, _lead_term(vector, order), {(i, zero): field.one()} if track else None)
        for i, vector in enumerate(vectors)
    ]


def _limits(max_pair_queue: Optional[int], verify: Optional[bool]) -> Tuple[int, bool]:
    settings = get_settings()
    return (
        settings.max_pair_queue if max_pair_queue is None else max_pair_queue,
        settings.verify_groebner if verify is None else verify,
    )


def _compute(vectors, rank, field, nvars, order, *, max_pair_queue, verify, cancel_event) -> List[_Element]:
    if order.term_order.nvars != nvars:
        raise InputError(f"term order has {order.term_order.nvars} weights, ring has {nvars} variables")
    cap, check = _limits(max_pair_queue, verify)
    basis = _buchberger(
        _elements(vectors, order, field, False, nvars),
        order,
        field,
        product_criterion=rank == 1,
        max_pair_queue=cap,
        cancel_event=cancel_event,
    )
    reduced = _reduced_basis(basis, order, field)
    if check and not _is_groebner(reduced, order, field):
        raise ArithmeticError("Buchberger output failed the S-pair self-check")
    return reduced


# Public API

def groebner_basis(
    generators: Sequence[Polynomial],
    order: TermOrder,
    *,
    max_pair_queue: Optional[int] = None,
    verify: Optional[bool] = None,
    cancel_event: Optional[threading.Event] = None,
) -> List[Polynomial]:
    """Reduced Gröbner basis, sorted by descending leading monomial."""
    vectors, rank, field, nvars = _as_vectors(generators)
    if rank != 1:
        raise InputError("groebner_basis takes polynomials; use module_groebner_basis for vectors")
    reduced = _compute(
        vectors, rank, field, nvars, ModuleOrder(order),
        max_pair_queue=max_pair_queue, verify=verify, cancel_event=cancel_event,
    )
    return [_to_polynomials(e.vector, 1, field, nvars)[0] for e in reduced]


def module_groebner_basis(
    generators: Sequence[Sequence[Polynomial]],
    order: TermOrder,
    position: Position = Position.POT,
    *,
    max_pair_queue: Optional[int] = None,
    verify: Optional[bool] = None,
    cancel_event: Optional[threading.Event] = None,
) -> List[ModuleElement]:
    """Reduced Gröbner basis of the submodule spanned by ``generators``."""
    vectors, rank, field, nvars = _as_vectors(generators)
    reduced = _compute(
        vectors, rank, field, nvars, ModuleOrder(order, Position(position)),
        max_pair_queue=max_pair_queue, verify=verify, cancel_event=cancel_event,
    )
    return [_to_polynomials(e.vector, rank, field, nvars) for e in reduced]


def is_groebner_basis(
    basis: Sequence[Union[Polynomial, Sequence[Polynomial]]],
    order: TermOrder,
    position: Position = Position.POT,
) -> bool:
    """Every S-pair of ``basis`` reduces to zero modulo ``basis``."""
    vectors, _, field, nvars = _as_vectors(basis)
    module_order = ModuleOrder(order, Position(position))
    return _is_groebner(_elements(vectors, module_order, field, False, nvars), module_order, field)


def normal_form(
    element: Union[Polynomial, Sequence[Polynomial]],
    basis: Sequence[Union[Polynomial, Sequence[Polynomial]]],
    order: TermOrder,
    position: Position = Position.POT,
) -> Union[Polynomial, ModuleElement]:
    """Remainder of ``element`` on division by ``basis``."""
    vectors, rank, field, nvars = _as_vectors(list(basis))
    module_order = ModuleOrder(order, Position(position))
    if _is_zero(element):
        return element
    target, target_rank, target_field, target_nvars = _as_vectors([element])
    if target_rank != rank or target_field != field or target_nvars != nvars:
        raise InputError("element and basis live in different modules")
    remainder = _reduce(target[0], _elements(vectors, module_order, field, False, nvars), module_order, field)
    result = _to_polynomials(remainder, rank, field, nvars)
    return result[0] if isinstance(element, Polynomial) else result


def _is_zero(element: Union[Polynomial, Sequence[Polynomial]]) -> bool:
    if isinstance(element, Polynomial):
        return element.is_zero()
    return all(p.is_zero() for p in element)


def syzygies(
    generators: Sequence[Union[Polynomial, Sequence[Polynomial]]],
    order: Optional[TermOrder] = None,
    *,
    max_pair_queue: Optional[int] = None,
    cancel_event: Optional[threading.Event] = None,
) -> List[ModuleElement]:
    """Generators of {(a_1, ..., a_m) : sum a_i f_i = 0}.

    Runs Buchberger while remembering how every basis element is written in
    the f_i. The S-pair relations of the final basis, pulled back through
    those representations, together with the relations f_i - sum q_t g_t,
    generate the syzygy module. Each returned syzygy is monic for the
    position-over-term order on the syzygy module.
    """
    vectors, rank, field, nvars = _as_vectors(generators)
    order = order or TermOrder.degrevlex(nvars)
    if order.nvars != nvars:
        raise InputError(f"term order has {order.nvars} weights, ring has {nvars} variables")
    module_order = ModuleOrder(order)
    cap, _ = _limits(max_pair_queue, None)
    basis = _buchberger(
        _elements(vectors, module_order, field, True, nvars),
        module_order,
        field,
        product_criterion=rank == 1,
        max_pair_queue=cap,
        cancel_event=cancel_event,
    )
    relations: List[Vector] = []
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            if basis[a].lead[0] != basis[b].lead[0]:
                continue
            _check_cancelled(cancel_event)
            s, shift_a, shift_b = _s_vector(basis[a], basis[b], field)
            quotients = [dict() for _ in basis]
            if _reduce(s, basis, module_order, field, quotients):
                raise ArithmeticError("S-pair of a Gröbner basis did not reduce to zero")
            relations.append(_combine_reps(basis[a], basis[b], (shift_a, shift_b), quotients, basis, field))
    zero: Exponent = (0,) * nvars
    for i, vector in enumerate(vectors):
        quotients = [dict() for _ in basis]
        if _reduce(vector, basis, module_order, field, quotients):
            raise ArithmeticError("generator does not reduce to zero modulo its own Gröbner basis")
        relation: Vector = {(i, zero): field.one()}
        for t, quotient in enumerate(quotients):
            for shift, factor in quotient.items():
                _add_multiple(relation, basis[t].rep, field.neg(factor), shift, field)
        relations.append(relation)

    syzygy_order = ModuleOrder(order, Position.POT)
    seen = set()
    result: List[ModuleElement] = []
    for relation in relations:
        if not relation:
            continue
        lead = _lead_term(relation, syzygy_order)
        monic = _scaled(relation, field.inv(relation[lead]), field)
        fingerprint = frozenset(monic.items())
        if fingerprint in seen:
            continue
        seen.add(fingerprint)
        result.append(_to_polynomials(monic, len(vectors), field, nvars))
    logger.debug("syzygies: %d generators, %d relations", len(vectors), len(result))
    return result


# Schreyer frames

@dataclass
class FrameLevel:
    """Basis elements of F_k written in F_(k-1), with their Schreyer data."""

    vectors: List[Vector]
    shifts: Tuple[Exponent, ...]
    paths: Tuple[Tuple[int, ...], ...]


def _lex_descending(term: Term) -> tuple:
    return (term[0], tuple(-e for e in term[1]))


def _minimal_pairs(leads: Sequence[Term]) -> List[Tuple[int, int]]:
    """Pairs (a, b), a < b, whose syzygy lead x^(lcm - lead_a) e_a is minimal.

    A syzygy whose lead is divisible by another lead in the same component
    adds nothing to a Gröbner basis of the syzygy module.
    """
    selected = []
    for a, (component, exponent) in enumerate(leads):
        candidates = []
        for b in range(a + 1, len(leads)):
            if leads[b][0] == component:
                candidates.append((b, _minus(_lcm(exponent, leads[b][1]), exponent)))
        for i, (b, monomial) in enumerate(candidates):
            dominated = any(
                _divides(other, monomial) and (other != monomial or j < i)
                for j, (_, other) in enumerate(candidates)
                if j != i
            )
            if not dominated:
                selected.append((a, b))
    return selected


def schreyer_frame(
    generators: Sequence[Polynomial],
    order: TermOrder,
    *,
    max_pair_queue: Optional[int] = None,
    verify: Optional[bool] = None,
    cancel_event: Optional[threading.Event] = None,
) -> List[FrameLevel]:
    """Free resolution of S/I as a list of levels F_1, F_2, ...

    Level 1 is the reduced Gröbner basis of I. Each later level holds the
    S-pair syzygies of the previous one, which form a Gröbner basis for the
    induced Schreyer order. Elements of every level are sorted by
    component and then lexicographically descending lead, which keeps the
    frame length within the number of variables.
    """
    basis = groebner_basis(
        generators, order, max_pair_queue=max_pair_queue, verify=verify, cancel_event=cancel_event
    )
    field, nvars = basis[0].field, basis[0].nvars
    previous_order = ModuleOrder.schreyer(order, ((0,) * nvars,), ((),))
    vectors: List[Vector] = [{(0, e): c for e, c in g.terms} for g in basis]
    vectors.sort(key=lambda v: _lex_descending(_lead_term(v, previous_order)))

    levels: List[FrameLevel] = []
    shifts_before: Tuple[Exponent, ...] = ((0,) * nvars,)
    paths_before: Tuple[Tuple[int, ...], ...] = ((),)
    while vectors:
        _check_cancelled(cancel_event)
        if len(levels) > nvars + 1:
            raise ArithmeticError(f"Schreyer frame longer than {nvars + 1} levels")
        leads = [_lead_term(v, previous_order) for v in vectors]
        shifts = tuple(_plus(exponent, shifts_before[component]) for component, exponent in leads)
        paths = tuple(paths_before[component] + (-j,) for j, (component, _) in enumerate(leads))
        levels.append(FrameLevel(vectors, shifts, paths))
        logger.debug("Schreyer frame level %d: rank %d", len(levels), len(vectors))

        elements = [_Element(v, lead) for v, lead in zip(vectors, leads)]
        next_level: List[Tuple[Term, Vector]] = []
        for a, b in _minimal_pairs(leads):
            _check_cancelled(cancel_event)
            s, (shift_a, factor_a), (shift_b, factor_b) = _s_vector(elements[a], elements[b], field)
            quotients = [dict() for _ in elements]
            if _reduce(s, elements, previous_order, field, quotients):
                raise ArithmeticError(f"S-vector of frame level {len(levels)} did not reduce to zero")
            syzygy: Vector = {}
            _add_term(syzygy, (a, shift_a), factor_a, field)
            _add_term(syzygy, (b, shift_b), field.neg(factor_b), field)
            for t, quotient in enumerate(quotients):
                for shift, factor in quotient.items():
                    _add_term(syzygy, (t, shift), field.neg(factor), field)
            next_level.append(((a, shift_a), _scaled(syzygy, field.inv(syzygy[(a, shift_a)]), field)))
        next_level.sort(key=lambda entry: _lex_descending(entry[0]))
        previous_order = ModuleOrder.schreyer(order, shifts, paths)
        shifts_before, paths_before = shifts, paths
        vectors = [vector for _, vector in next_level]
    return levels
