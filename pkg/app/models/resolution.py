"""Term orders, polynomial matrices, free resolutions and Betti tables."""

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, Mapping, Optional, Sequence, Tuple

from app.errors import DimensionMismatchError, InputError
from app.models.ring import Exponent, Polynomial


class OrderKind(str, Enum):
    """Monomial order families."""
    DEGREVLEX = "degrevlex"
    LEX = "lex"


@dataclass(frozen=True)
class TermOrder:
    """Monomial order; ``weights`` also define the grading used for degrees.

    degrevlex compares weighted degree first, then reverse lexicographic.
    lex ignores the weights for comparison.
    """

    kind: OrderKind
    weights: Tuple[int, ...]

    def __post_init__(self):
        weights = tuple(int(w) for w in self.weights)
        if any(w <= 0 for w in weights):
            raise InputError("term order weights must be positive integers")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "kind", OrderKind(self.kind))

    @classmethod
    def degrevlex(cls, nvars: int, weights: Optional[Sequence[int]] = None) -> "TermOrder":
        return cls(OrderKind.DEGREVLEX, tuple(weights) if weights is not None else (1,) * nvars)

    @classmethod
    def lex(cls, nvars: int) -> "TermOrder":
        return cls(OrderKind.LEX, (1,) * nvars)

    @property
    def nvars(self) -> int:
        return len(self.weights)

    def weighted_degree(self, exponent: Exponent) -> int:
        return sum(w * e for w, e in zip(self.weights, exponent))

    def key(self, exponent: Exponent) -> tuple:
        """Sort key: larger key means larger monomial."""
        if self.kind is OrderKind.LEX:
            return exponent
        return (self.weighted_degree(exponent), tuple(-e for e in reversed(exponent)))


@dataclass(frozen=True)
class PolyMatrix:
    """Sparse matrix over a polynomial ring, stored by columns.

    With degree labels, entry (i, j) is homogeneous of weighted degree
    ``col_degrees[j] - row_degrees[i]``.
    """

    nrows: int
    columns: Tuple[Tuple[Tuple[int, Polynomial], ...], ...]
    row_degrees: Optional[Tuple[int, ...]] = None
    col_degrees: Optional[Tuple[int, ...]] = None
    weights: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        columns = tuple(
            tuple(sorted(((int(i), p) for i, p in (c.items() if isinstance(c, Mapping) else c) if not p.is_zero()),
                         key=lambda entry: entry[0]))
            for c in self.columns
        )
        object.__setattr__(self, "columns", columns)
        for column in columns:
            for row, _ in column:
                if not 0 <= row < self.nrows:
                    raise DimensionMismatchError(f"row index {row} outside 0..{self.nrows - 1}")
        if self.row_degrees is not None:
            object.__setattr__(self, "row_degrees", tuple(self.row_degrees))
            if len(self.row_degrees) != self.nrows:
                raise DimensionMismatchError("row degree labels do not match the row count")
        if self.col_degrees is not None:
            object.__setattr__(self, "col_degrees", tuple(self.col_degrees))
            if len(self.col_degrees) != len(columns):
                raise DimensionMismatchError("column degree labels do not match the column count")
        if self.weights is not None and self.row_degrees is not None and self.col_degrees is not None:
            weights = tuple(self.weights)
            object.__setattr__(self, "weights", weights)
            for j, column in enumerate(columns):
                for i, entry in column:
                    expected = self.col_degrees[j] - self.row_degrees[i]
                    for exponent in entry.monomials:
                        if sum(w * e for w, e in zip(weights, exponent)) != expected:
                            raise InputError(f"entry ({i}, {j}) is not homogeneous of degree {expected}")

    @property
    def ncols(self) -> int:
        return len(self.columns)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def column(self, j: int) -> Dict[int, Polynomial]:
        return dict(self.columns[j])

    def entry(self, i: int, j: int) -> Optional[Polynomial]:
        return self.column(j).get(i)

    def is_zero(self) -> bool:
        return all(not column for column in self.columns)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.nrows:
            raise DimensionMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        product = []
        for column in other.columns:
            accumulated: Dict[int, Polynomial] = {}
            for k, scalar in column:
                for i, entry in self.columns[k]:
                    term = entry * scalar
                    accumulated[i] = accumulated[i] + term if i in accumulated else term
            product.append(accumulated)
        return PolyMatrix(self.nrows, tuple(product))


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers: (homological index, weighted degree) -> rank."""

    entries: Tuple[Tuple[Tuple[int, int], int], ...]

    def __post_init__(self):
        items = self.entries.items() if isinstance(self.entries, Mapping) else self.entries
        object.__setattr__(self, "entries", tuple(sorted((k, v) for k, v in items if v)))

    @classmethod
    def from_degrees(cls, degrees: Sequence[Sequence[int]]) -> "BettiTable":
        counts: Counter = Counter()
        for i, module_degrees in enumerate(degrees):
            for degree in module_degrees:
                counts[(i, degree)] += 1
        return cls(tuple(counts.items()))

    @cached_property
    def as_dict(self) -> Dict[Tuple[int, int], int]:
        return dict(self.entries)

    def totals(self) -> Tuple[int, ...]:
        if not self.entries:
            return ()
        length = max(i for (i, _), _ in self.entries)
        return tuple(sum(v for (j, _), v in self.entries if j == i) for i in range(length + 1))

    def __str__(self) -> str:
        totals = self.totals()
        if not totals:
            return "total: 0"
        rows = sorted({degree - i for (i, degree), _ in self.entries})
        width = max(len(str(v)) for v in totals) + 1
        lines = ["total:" + "".join(str(v).rjust(width) for v in totals)]
        for row in rows:
            cells = []
            for i in range(len(totals)):
                value = self.as_dict.get((i, row + i), 0)
                cells.append(("." if value == 0 else str(value)).rjust(width))
            lines.append(f"{row}:".rjust(6) + "".join(cells))
        return "\n".join(lines)


@dataclass(frozen=True)
class FreeResolutionComplex:
    """F_0 <- F_1 <- ... <- F_L with differentials d_1..d_L.

    ``degrees[i]`` holds the weighted degrees of the basis of F_i.
    """

    differentials: Tuple[PolyMatrix, ...]
    degrees: Tuple[Tuple[int, ...], ...]
    weights: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "differentials", tuple(self.differentials))
        object.__setattr__(self, "degrees", tuple(tuple(d) for d in self.degrees))
        object.__setattr__(self, "weights", tuple(self.weights))
        if len(self.degrees) != len(self.differentials) + 1:
            raise DimensionMismatchError("need one degree list per free module")
        for i, differential in enumerate(self.differentials, start=1):
            if differential.nrows != len(self.degrees[i - 1]) or differential.ncols != len(self.degrees[i]):
                raise DimensionMismatchError(f"d_{i} has shape {differential.shape}, inconsistent with ranks")

    @property
    def ranks(self) -> Tuple[int, ...]:
        return tuple(len(d) for d in self.degrees)

    @property
    def length(self) -> int:
        nonzero = [i for i, rank in enumerate(self.ranks) if rank]
        return nonzero[-1] if nonzero else 0

    def betti_table(self) -> BettiTable:
        return BettiTable.from_degrees(self.degrees)
