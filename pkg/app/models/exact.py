"""Exact rational values and degree vectors."""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, Tuple, Union

from app.errors import DimensionMismatchError, InputError


Rational = Fraction
RationalLike = Union[int, Fraction, str]
IntMatrix = List[List[int]]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"a"`` or ``"a/b"`` into a reduced rational."""
    match = _RATIONAL_RE.match(text)
    if not match:
        raise InputError(f"malformed rational {text!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise InputError(f"zero denominator in {text!r}")
    return Fraction(numerator, denominator)


def to_rational(value: RationalLike) -> Fraction:
    if isinstance(value, bool):
        raise InputError(f"cannot use {value!r} as a rational")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise InputError(f"cannot use {value!r} as a rational")


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class DegreeVector:
    """An element of the grading group, embedded in a rational vector space."""

    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(to_rational(e) for e in self.entries))

    @classmethod
    def of(cls, *values: RationalLike) -> "DegreeVector":
        return cls(tuple(values))

    @classmethod
    def zero(cls, dimension: int) -> "DegreeVector":
        return cls((0,) * dimension)

    @classmethod
    def unit(cls, dimension: int, index: int) -> "DegreeVector":
        return cls(tuple(1 if i == index else 0 for i in range(dimension)))

    @classmethod
    def parse(cls, text: str) -> "DegreeVector":
        """Parse ``(q1,...,qk)``; the parentheses are mandatory."""
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise InputError(f"degree tuple must be parenthesised: {text!r}")
        inner = body[1:-1].strip()
        if not inner:
            return cls(())
        return cls(tuple(parse_rational(part) for part in inner.split(",")))

    @property
    def dimension(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.entries)

    def __getitem__(self, index: int) -> Fraction:
        return self.entries[index]

    def _check(self, other: "DegreeVector") -> None:
        if self.dimension != other.dimension:
            raise DimensionMismatchError(
                f"dimension mismatch: {self.dimension} vs {other.dimension}"
            )

    def __add__(self, other: "DegreeVector") -> "DegreeVector":
        self._check(other)
        return DegreeVector(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "DegreeVector") -> "DegreeVector":
        self._check(other)
        return DegreeVector(tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "DegreeVector":
        return DegreeVector(tuple(-a for a in self.entries))

    def scale(self, factor: RationalLike) -> "DegreeVector":
        factor = to_rational(factor)
        return DegreeVector(tuple(factor * a for a in self.entries))

    def dot(self, other: "DegreeVector") -> Fraction:
        self._check(other)
        return sum((a * b for a, b in zip(self.entries, other.entries)), Fraction(0))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.entries)

    def __str__(self) -> str:
        return "(" + ",".join(format_rational(a) for a in self.entries) + ")"


def sum_vectors(vectors: Iterable[DegreeVector], dimension: int) -> DegreeVector:
    total = DegreeVector.zero(dimension)
    for vector in vectors:
        total = total + vector
    return total
