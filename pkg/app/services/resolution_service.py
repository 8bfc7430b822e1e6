"""Free resolutions, minimalization and projective dimension."""

import logging
import threading
from collections import Counter
from typing import Dict, List, Optional, Sequence, Tuple, Union

from app.config import Settings, get_settings
from app.errors import InhomogeneousError, InputError
from app.models.resolution import BettiTable, FreeResolutionComplex, PolyMatrix, TermOrder
from app.models.ring import IdealPresentation, Polynomial
from app.services.groebner import schreyer_frame


logger = logging.getLogger(__name__)

Generators = Union[IdealPresentation, Sequence[Polynomial]]


def _generators(ideal: Generators) -> Tuple[Polynomial, ...]:
    generators = ideal.generators if isinstance(ideal, IdealPresentation) else tuple(ideal)
    if not generators:
        raise InputError("at least one generator is required")
    return generators


def weighted_degree(polynomial: Polynomial, weights: Sequence[int]) -> Optional[int]:
    """Common weighted degree of all terms, or None if inhomogeneous."""
    degrees = {sum(w * e for w, e in zip(weights, exponent)) for exponent in polynomial.monomials}
    return degrees.pop() if len(degrees) == 1 else None


def _check_weights(generators: Sequence[Polynomial], weight: Optional[Sequence[int]]) -> Tuple[int, ...]:
    nvars = generators[0].nvars
    weights = tuple(int(w) for w in weight) if weight is not None else (1,) * nvars
    if len(weights) != nvars:
        raise InputError(f"weight vector has {len(weights)} entries, ring has {nvars} variables")
    if any(w <= 0 for w in weights):
        raise InputError("weights must be positive integers")
    for generator in generators:
        if generator.is_zero():
            raise InputError("generators must be nonzero")
        if weighted_degree(generator, weights) is None:
            raise InhomogeneousError(f"generator is not homogeneous under the weight {weights}")
    return weights


def euler_characteristic(degrees: Sequence[Sequence[int]]) -> Dict[int, int]:
    """Graded Euler characteristic: degree -> sum of (-1)^i counts."""
    counter: Counter = Counter()
    for i, module in enumerate(degrees):
        for degree in module:
            counter[degree] += -1 if i % 2 else 1
    return {degree: value for degree, value in counter.items() if value}


def koszul_characteristic(degrees: Sequence[int]) -> Dict[int, int]:
    """Coefficients of prod (1 - t^d), the Euler characteristic of a Koszul complex."""
    product: Dict[int, int] = {0: 1}
    for d in degrees:
        updated = Counter(product)
        for degree, value in product.items():
            updated[degree + d] -= value
        product = {degree: value for degree, value in updated.items() if value}
    return product


class ResolutionService:
    """Resolutions of S/I for ideals homogeneous under a positive weight."""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()

    def free_resolution(
        self,
        ideal: Generators,
        weight: Optional[Sequence[int]] = None,
        cancel_event: Optional[threading.Event] = None,
    ) -> FreeResolutionComplex:
        """Schreyer resolution of S/I; usually not minimal."""
        generators = _generators(ideal)
        weights = _check_weights(generators, weight)
        order = TermOrder.degrevlex(len(weights), weights)
        levels = schreyer_frame(
            generators,
            order,
            max_pair_queue=self.settings.max_pair_queue,
            verify=self.settings.verify_groebner,
            cancel_event=cancel_event,
        )
        field, nvars = generators[0].field, generators[0].nvars
        degrees: List[Tuple[int, ...]] = [(0,)]
        differentials = []
        for level in levels:
            column_degrees = tuple(sum(w * e for w, e in zip(weights, shift)) for shift in level.shifts)
            columns = []
            for vector in level.vectors:
                entries: Dict[int, Dict] = {}
                for (row, exponent), coefficient in vector.items():
                    entries.setdefault(row, {})[exponent] = coefficient
                columns.append({row: Polynomial(field, nvars, terms) for row, terms in entries.items()})
            differentials.append(
                PolyMatrix(len(degrees[-1]), tuple(columns), degrees[-1], column_degrees, weights)
            )
            degrees.append(column_degrees)
        complex_ = FreeResolutionComplex(tuple(differentials), tuple(degrees), weights)
        logger.debug("Schreyer resolution ranks %s", complex_.ranks)
        if self.settings.verify_complexes:
            self.verify_complex(complex_)
        return complex_

    def verify_complex(self, complex_: FreeResolutionComplex) -> None:
        """Assert d_i * d_(i+1) = 0 for consecutive differentials."""
        for i in range(len(complex_.differentials) - 1):
            if not (complex_.differentials[i] @ complex_.differentials[i + 1]).is_zero():
                raise ArithmeticError(f"d_{i + 1} * d_{i + 2} is not zero")

    def minimalize(self, complex_: FreeResolutionComplex) -> Tuple[FreeResolutionComplex, BettiTable]:
        """Cancel unit entries from homological degree 1 upward.

        A unit u at (i, j) of d_k splits off S --u--> S: column i of d_(k-1)
        and row j of d_(k+1) are dropped, and d_k is cleared along row i
        before row i and column j are removed.
        """
        weights = complex_.weights
        if not weights or any(w <= 0 for w in weights):
            raise InputError("minimalization needs a complex graded by a positive weight")
        for differential in complex_.differentials:
            if differential.row_degrees is None or differential.col_degrees is None:
                raise InputError("minimalization needs degree labels on every differential")
        alive = [list(range(len(module))) for module in complex_.degrees]
        matrices: List[Dict[int, Dict[int, Polynomial]]] = [
            {j: dict(column) for j, column in enumerate(d.columns)} for d in complex_.differentials
        ]
        cancelled = 0
        for k, matrix in enumerate(matrices):
            while True:
                unit = next(
                    (
                        (i, j, entry)
                        for j in sorted(matrix)
                        for i, entry in sorted(matrix[j].items())
                        if entry.is_constant()
                    ),
                    None,
                )
                if unit is None:
                    break
                i, j, entry = unit
                field = entry.field
                pivot = matrix[j]
                inverse = field.inv(entry.coefficient((0,) * entry.nvars))
                for col, column in matrix.items():
                    if col == j or i not in column:
                        continue
                    factor = column[i] * inverse
                    for row, value in pivot.items():
                        current = column.get(row)
                        updated = -(factor * value) if current is None else current - factor * value
                        if updated.is_zero():
                            column.pop(row, None)
                        else:
                            column[row] = updated
                del matrix[j]
                for column in matrix.values():
                    column.pop(i, None)
                if k > 0:
                    matrices[k - 1].pop(i, None)
                if k + 1 < len(matrices):
                    for column in matrices[k + 1].values():
                        column.pop(j, None)
                alive[k].remove(i)
                alive[k + 1].remove(j)
                cancelled += 1

        degrees = [tuple(complex_.degrees[k][i] for i in alive[k]) for k in range(len(alive))]
        differentials = []
        for k, matrix in enumerate(matrices):
            row_index = {old: new for new, old in enumerate(alive[k])}
            columns = tuple(
                {row_index[row]: value for row, value in matrix[col].items()} for col in alive[k + 1]
            )
            differentials.append(PolyMatrix(len(alive[k]), columns, degrees[k], degrees[k + 1], weights))
        while len(degrees) > 1 and not degrees[-1]:
            degrees.pop()
            differentials.pop()
        minimal = FreeResolutionComplex(tuple(differentials), tuple(degrees), weights)

        if euler_characteristic(minimal.degrees) != euler_characteristic(complex_.degrees):
            raise ArithmeticError("minimalization changed the graded Euler characteristic")
        if self.settings.verify_complexes:
            self.verify_complex(minimal)
        for differential in minimal.differentials:
            if any(entry.is_constant() for column in differential.columns for _, entry in column):
                raise ArithmeticError("minimal complex still has a unit entry")
        logger.debug("minimalization cancelled %d units, ranks %s", cancelled, minimal.ranks)
        return minimal, minimal.betti_table()

    def minimal_resolution(
        self,
        ideal: Generators,
        weight: Optional[Sequence[int]] = None,
        cancel_event: Optional[threading.Event] = None,
    ) -> FreeResolutionComplex:
        minimal, _ = self.minimalize(self.free_resolution(ideal, weight, cancel_event))
        return minimal

    def betti_table(
        self,
        ideal: Generators,
        weight: Optional[Sequence[int]] = None,
        cancel_event: Optional[threading.Event] = None,
    ) -> BettiTable:
        _, table = self.minimalize(self.free_resolution(ideal, weight, cancel_event))
        return table

    def pdim(
        self,
        ideal: Generators,
        weight: Optional[Sequence[int]] = None,
        cancel_event: Optional[threading.Event] = None,
    ) -> int:
        """Projective dimension of S/I; 0 when I is the unit ideal."""
        return self.minimal_resolution(ideal, weight, cancel_event).length

    def is_koszul(self, complex_: FreeResolutionComplex, generators: Sequence[Polynomial]) -> bool:
        """Whether the resolved quotient has the Hilbert series of a complete intersection.

        Homogeneous f_1..f_n of positive degree form a regular sequence
        exactly when the graded Euler characteristic of S/I equals
        prod (1 - t^deg f_i).
        """
        if any(g.is_constant() for g in generators):
            return False
        degrees = [weighted_degree(g, complex_.weights) for g in generators]
        return euler_characteristic(complex_.degrees) == koszul_characteristic(degrees)

    def is_regular_sequence(
        self,
        ideal: Generators,
        weight: Optional[Sequence[int]] = None,
        cancel_event: Optional[threading.Event] = None,
    ) -> bool:
        generators = _generators(ideal)
        weights = _check_weights(generators, weight)
        return self.is_koszul(self.free_resolution(generators, weights, cancel_event), generators)
