"""Exact integer and rational linear algebra.

Everything here works over ``int`` and ``Fraction``; no floating point.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, gcd, lcm
from typing import FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

from app.errors import DimensionMismatchError, InputError
from app.models.exact import DegreeVector, IntMatrix


logger = logging.getLogger(__name__)


# Integer matrices

def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _shape(matrix: Sequence[Sequence]) -> Tuple[int, int]:
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    if any(len(row) != cols for row in matrix):
        raise DimensionMismatchError("matrix is not rectangular")
    return rows, cols


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> List[List]:
    rows, inner = _shape(a)
    inner_b, cols = _shape(b)
    if inner != inner_b:
        raise DimensionMismatchError(f"cannot multiply {rows}x{inner} by {inner_b}x{cols}")
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(rows)]


def determinant(matrix: Sequence[Sequence]) -> Fraction:
    """Exact determinant by Gaussian elimination over Q."""
    rows, cols = _shape(matrix)
    if rows != cols:
        raise DimensionMismatchError("determinant of a non-square matrix")
    work = [[Fraction(x) for x in row] for row in matrix]
    det = Fraction(1)
    for col in range(rows):
        pivot = next((r for r in range(col, rows) if work[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        det *= work[col][col]
        for r in range(col + 1, rows):
            factor = work[r][col] / work[col][col]
            if factor:
                for c in range(col, rows):
                    work[r][c] -= factor * work[col][c]
    return det


def snf(matrix: IntMatrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: returns (U, D, V) with U*A*V = D.

    U and V are unimodular, D is diagonal with d1 | d2 | ... and every
    diagonal entry nonnegative.
    """
    rows, cols = _shape(matrix)
    d = [[int(x) for x in row] for row in matrix]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i: int, j: int) -> None:
        if i != j:
            d[i], d[j] = d[j], d[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        if i != j:
            for row in d:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(target: int, source: int, factor: int) -> None:
        for m in (d, u):
            src, dst = m[source], m[target]
            for k in range(len(dst)):
                dst[k] += factor * src[k]

    def add_col(target: int, source: int, factor: int) -> None:
        for m in (d, v):
            for row in m:
                row[target] += factor * row[source]

    for t in range(min(rows, cols)):
        while True:
            candidates = [(abs(d[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if d[i][j]]
            if not candidates:
                break
            _, i, j = min(candidates)
            swap_rows(t, i)
            swap_cols(t, j)
            pivot = d[t][t]
            clean = True
            for r in range(t + 1, rows):
                if d[r][t]:
                    add_row(r, t, -(d[r][t] // pivot))
                    clean = clean and d[r][t] == 0
            for c in range(t + 1, cols):
                if d[t][c]:
                    add_col(c, t, -(d[t][c] // pivot))
                    clean = clean and d[t][c] == 0
            if not clean:
                continue
            bad = next(
                ((r, c) for r in range(t + 1, rows) for c in range(t + 1, cols) if d[r][c] % pivot),
                None,
            )
            if bad is None:
                break
            # pull the offending row into row t; the next pass shrinks the pivot
            add_row(t, bad[0], 1)
        if t < rows and t < cols and d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return u, d, v


def solve_linear(a: Sequence[Sequence], b: Sequence[Sequence]) -> Optional[List[List[Fraction]]]:
    """Solve A X = B over Q; any solution, or None when inconsistent."""
    rows, cols = _shape(a)
    rows_b, rhs = _shape(b)
    if rows != rows_b:
        raise DimensionMismatchError("right-hand side has the wrong number of rows")
    work = [[Fraction(x) for x in a[i]] + [Fraction(x) for x in b[i]] for i in range(rows)]
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        scale = work[r][c]
        work[r] = [x / scale for x in work[r]]
        for i in range(rows):
            if i != r and work[i][c] != 0:
                factor = work[i][c]
                work[i] = [x - factor * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if any(work[i][cols + k] != 0 for k in range(rhs)):
            return None
    solution = [[Fraction(0)] * rhs for _ in range(cols)]
    for i, c in enumerate(pivots):
        for k in range(rhs):
            solution[c][k] = work[i][cols + k]
    return solution


def integral_scaling(values: Sequence[Fraction]) -> List[int]:
    """Smallest positive multiple of a rational vector with coprime integer entries."""
    denominator = 1
    for value in values:
        denominator = lcm(denominator, Fraction(value).denominator)
    scaled = [int(Fraction(value) * denominator) for value in values]
    common = 0
    for value in scaled:
        common = gcd(common, value)
    return [value // common for value in scaled] if common else scaled


# Positive functionals (Gordan alternative)

@dataclass(frozen=True)
class FeasibilityOutcome:
    """Exactly one of ``witness`` / ``certificate`` is set."""

    witness: Optional[DegreeVector] = None
    certificate: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if (self.witness is None) == (self.certificate is None):
            raise ValueError("exactly one of witness and certificate must be given")

    @property
    def has_witness(self) -> bool:
        return self.witness is not None


@dataclass
class _Inequality:
    coefficients: List[Fraction]   # coefficients . c >= bound
    bound: Fraction
    multipliers: List[Fraction]    # nonnegative combination of the input rows

    @property
    def support(self) -> FrozenSet[int]:
        return frozenset(i for i, m in enumerate(self.multipliers) if m)

    def scaled(self, factor: Fraction) -> "_Inequality":
        return _Inequality(
            [factor * a for a in self.coefficients],
            factor * self.bound,
            [factor * m for m in self.multipliers],
        )

    def plus(self, other: "_Inequality") -> "_Inequality":
        return _Inequality(
            [a + b for a, b in zip(self.coefficients, other.coefficients)],
            self.bound + other.bound,
            [a + b for a, b in zip(self.multipliers, other.multipliers)],
        )

    def normalized(self) -> "_Inequality":
        largest = max((abs(a) for a in self.coefficients), default=Fraction(0))
        if largest == 0:
            largest = abs(self.bound)
        return self.scaled(1 / largest) if largest else self


def _check_dimensions(vectors: Sequence[DegreeVector], dimension: Optional[int] = None) -> int:
    dims = {v.dimension for v in vectors}
    if dimension is not None:
        dims.add(dimension)
    if len(dims) > 1:
        raise DimensionMismatchError(f"vectors of different dimensions: {sorted(dims)}")
    return dims.pop() if dims else 0


def _pick_value(lower: Optional[Fraction], upper: Optional[Fraction]) -> Fraction:
    """Integer closest to zero inside [lower, upper] when there is one."""
    lo = ceil(lower) if lower is not None else None
    hi = floor(upper) if upper is not None else None
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return Fraction(min(0, hi))
    if hi is None:
        return Fraction(max(0, lo))
    if lo <= hi:
        return Fraction(0 if lo <= 0 <= hi else (lo if lo > 0 else hi))
    return lower


def positive_functional_or_certificate(
    generators: Sequence[DegreeVector], dimension: Optional[int] = None
) -> FeasibilityOutcome:
    """Either c with c.g >= 1 for every generator, or a zero relation.

    Decided by Fourier-Motzkin elimination over Q with multiplier tracking:
    an infeasible system leaves a row 0 >= b with b > 0 whose multipliers
    are the relation.

    Redundant rows are dropped as they appear. After t eliminations a row
    combining more than t + 1 input rows is implied by the others, and so
    is a row whose input rows strictly contain those of another row. This
    keeps every stage polynomial in the number of generators.
    """
    k = _check_dimensions(generators, dimension)
    for generator in generators:
        if generator.is_zero():
            raise InputError("generators must be nonzero")
    m = len(generators)
    rows = [
        _Inequality(
            list(g.entries), Fraction(1), [Fraction(1 if j == i else 0) for j in range(m)]
        )
        for i, g in enumerate(generators)
    ]

    stages: List[Tuple[int, List[_Inequality]]] = []
    current = rows
    for eliminated, var in enumerate(reversed(range(k)), start=1):
        stages.append((var, current))
        positive = [(r, r.support) for r in current if r.coefficients[var] > 0]
        negative = [(r, r.support) for r in current if r.coefficients[var] < 0]
        survivors = [r for r in current if r.coefficients[var] == 0]
        for p, p_support in positive:
            for n, n_support in negative:
                if len(p_support | n_support) > eliminated + 1:
                    continue
                survivors.append(p.scaled(-n.coefficients[var]).plus(n.scaled(p.coefficients[var])))
        current = _prune(survivors)
        logger.debug("eliminated variable %d, %d rows remain", var, len(current))
        infeasible = next((r for r in current if not any(r.coefficients) and r.bound > 0), None)
        if infeasible is not None:
            return _certificate(generators, infeasible)
    infeasible = next((r for r in current if r.bound > 0), None)
    if infeasible is not None:
        return _certificate(generators, infeasible)

    values = [Fraction(0)] * k
    for var, constraints in reversed(stages):
        lower: Optional[Fraction] = None
        upper: Optional[Fraction] = None
        for row in constraints:
            a = row.coefficients[var]
            if a == 0:
                continue
            rest = row.bound - sum(row.coefficients[j] * values[j] for j in range(var))
            limit = rest / a
            if a > 0:
                lower = limit if lower is None else max(lower, limit)
            else:
                upper = limit if upper is None else min(upper, limit)
        values[var] = _pick_value(lower, upper)
    witness = DegreeVector(tuple(values))
    if any(witness.dot(g) < 1 for g in generators):
        raise ArithmeticError("Fourier-Motzkin back-substitution produced an invalid witness")
    logger.debug("positive functional %s for %d generators", witness, m)
    return FeasibilityOutcome(witness=witness)


def _prune(rows: List[_Inequality]) -> List[_Inequality]:
    seen = set()
    kept = []
    for row in rows:
        row = row.normalized()
        if not any(row.coefficients) and row.bound <= 0:
            continue
        key = (tuple(row.coefficients), row.bound)
        if key in seen:
            continue
        seen.add(key)
        kept.append(row)
    supports = [row.support for row in kept]
    return [
        row
        for row, support in zip(kept, supports)
        if not any(other < support for other in supports)
    ]


def _certificate(generators: Sequence[DegreeVector], row: _Inequality) -> FeasibilityOutcome:
    multipliers = integral_scaling(row.multipliers)
    dimension = generators[0].dimension
    total = [sum(multipliers[i] * generators[i][j] for i in range(len(generators))) for j in range(dimension)]
    if any(total) or not any(multipliers) or any(x < 0 for x in multipliers):
        raise ArithmeticError("Fourier-Motzkin produced an invalid relation")
    logger.debug("zero relation %s", multipliers)
    return FeasibilityOutcome(certificate=tuple(multipliers))


# Bounded nonnegative integer solutions

def iter_nonneg_solutions(
    generators: Sequence[DegreeVector],
    target: DegreeVector,
    length_bound: int,
    functional: Optional[DegreeVector] = None,
) -> Iterator[Tuple[int, ...]]:
    """Yield x >= 0 with sum x_i g_i = target and sum x_i <= length_bound.

    ``functional`` (value >= 1 on every generator) tightens the remaining
    length budget at every step.
    """
    if length_bound < 0:
        raise InputError("length bound must be nonnegative")
    _check_dimensions(list(generators) + [target])
    if functional is not None:
        _check_dimensions([functional, target])
    m = len(generators)
    if m == 0:
        if target.is_zero():
            yield ()
        return

    def last_multiple(generator: DegreeVector, remaining: DegreeVector) -> Optional[int]:
        if generator.is_zero():
            return 0 if remaining.is_zero() else None
        index = next(i for i, a in enumerate(generator.entries) if a != 0)
        ratio = remaining[index] / generator[index]
        if ratio.denominator != 1 or ratio < 0 or generator.scale(ratio) != remaining:
            return None
        return int(ratio)

    def search(index: int, remaining: DegreeVector, budget: int, prefix: Tuple[int, ...]):
        if functional is not None:
            height = functional.dot(remaining)
            if height < 0:
                return
            budget = min(budget, floor(height))
        generator = generators[index]
        if index == m - 1:
            multiple = last_multiple(generator, remaining)
            if multiple is not None and multiple <= budget:
                yield prefix + (multiple,)
            return
        for count in range(budget + 1):
            yield from search(index + 1, remaining - generator.scale(count), budget - count, prefix + (count,))

    yield from search(0, target, length_bound, ())


def bounded_nonneg_solutions(
    generators: Sequence[DegreeVector], target: DegreeVector, length_bound: int
) -> Set[Tuple[int, ...]]:
    return set(iter_nonneg_solutions(generators, target, length_bound))
