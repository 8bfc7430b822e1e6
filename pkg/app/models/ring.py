"""Multigraded polynomial rings, polynomials and ideals."""

import re
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from sympy import isprime

from app.errors import DimensionMismatchError, InputError
from app.models.exact import DegreeVector


Exponent = Tuple[int, ...]
Coefficient = Union[int, Fraction]

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_FIELD_RE = re.compile(r"^\s*GF\(\s*(\d+)\s*\)\s*$")


@dataclass(frozen=True)
class CoefficientField:
    """Either Q (characteristic 0) or the prime field F_p.

    Elements of Q are ``Fraction``; elements of F_p are ``int`` in ``[0, p)``.
    """

    characteristic: int = 32003

    def __post_init__(self):
        if self.characteristic < 0 or (self.characteristic != 0 and not isprime(self.characteristic)):
            raise InputError(f"GF({self.characteristic}) is not a prime field")

    @classmethod
    def rationals(cls) -> "CoefficientField":
        return cls(0)

    @classmethod
    def parse(cls, text: str) -> "CoefficientField":
        if text.strip() == "QQ":
            return cls(0)
        match = _FIELD_RE.match(text)
        if not match:
            raise InputError(f"unknown field {text!r}; expected QQ or GF(p)")
        return cls(int(match.group(1)))

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    @property
    def name(self) -> str:
        return "QQ" if self.is_rational else f"GF({self.characteristic})"

    def __str__(self) -> str:
        return self.name

    def zero(self) -> Coefficient:
        return Fraction(0) if self.is_rational else 0

    def one(self) -> Coefficient:
        return Fraction(1) if self.is_rational else 1

    def coerce(self, value: Any) -> Coefficient:
        if isinstance(value, bool):
            raise InputError(f"cannot coerce {value!r} into {self.name}")
        if self.is_rational:
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
            raise InputError(f"cannot coerce {value!r} into QQ")
        p = self.characteristic
        if isinstance(value, int):
            return value % p
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise InputError(f"{value} has no image in {self.name}")
            return value.numerator * pow(value.denominator, -1, p) % p
        raise InputError(f"cannot coerce {value!r} into {self.name}")

    def add(self, a: Coefficient, b: Coefficient) -> Coefficient:
        return a + b if self.is_rational else (a + b) % self.characteristic

    def sub(self, a: Coefficient, b: Coefficient) -> Coefficient:
        return a - b if self.is_rational else (a - b) % self.characteristic

    def mul(self, a: Coefficient, b: Coefficient) -> Coefficient:
        return a * b if self.is_rational else (a * b) % self.characteristic

    def neg(self, a: Coefficient) -> Coefficient:
        return -a if self.is_rational else (-a) % self.characteristic

    def inv(self, a: Coefficient) -> Coefficient:
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a) if self.is_rational else pow(a, -1, self.characteristic)

    def div(self, a: Coefficient, b: Coefficient) -> Coefficient:
        return self.mul(a, self.inv(b))

    def is_zero(self, a: Coefficient) -> bool:
        return a == 0

    def is_one(self, a: Coefficient) -> bool:
        return a == 1

    def lift(self, a: Coefficient) -> Fraction:
        """Symmetric representative for F_p, the value itself for Q."""
        if self.is_rational:
            return Fraction(a)
        p = self.characteristic
        return Fraction(a - p if a > p // 2 else a)


def _monomial_product(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True)
class Polynomial:
    """Term-sparse polynomial: exponent tuple -> nonzero coefficient."""

    field: CoefficientField
    nvars: int
    terms: Tuple[Tuple[Exponent, Coefficient], ...] = ()

    def __post_init__(self):
        raw = self.terms.items() if isinstance(self.terms, Mapping) else self.terms
        cleaned: Dict[Exponent, Coefficient] = {}
        for exponent, coefficient in raw:
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != self.nvars:
                raise DimensionMismatchError(
                    f"exponent {exponent} does not have {self.nvars} entries"
                )
            if any(e < 0 for e in exponent):
                raise InputError(f"negative exponent in {exponent}")
            value = self.field.coerce(coefficient)
            cleaned[exponent] = self.field.add(cleaned.get(exponent, self.field.zero()), value)
        canonical = tuple(
            sorted(
                ((e, c) for e, c in cleaned.items() if not self.field.is_zero(c)),
                key=lambda term: term[0],
            )
        )
        object.__setattr__(self, "terms", canonical)

    # Constructors

    @classmethod
    def constant(cls, field: CoefficientField, nvars: int, value: Coefficient = 1) -> "Polynomial":
        return cls(field, nvars, (((0,) * nvars, value),))

    @classmethod
    def monomial(
        cls, field: CoefficientField, nvars: int, exponent: Sequence[int], coefficient: Coefficient = 1
    ) -> "Polynomial":
        return cls(field, nvars, ((tuple(exponent), coefficient),))

    @classmethod
    def variable(cls, field: CoefficientField, nvars: int, index: int) -> "Polynomial":
        exponent = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(field, nvars, ((exponent, 1),))

    # Views

    @cached_property
    def as_dict(self) -> Dict[Exponent, Coefficient]:
        return dict(self.terms)

    @property
    def monomials(self) -> Tuple[Exponent, ...]:
        return tuple(e for e, _ in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e, _ in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            raise InputError("the zero polynomial has no degree")
        return max(sum(e) for e, _ in self.terms)

    def support_variables(self) -> Tuple[int, ...]:
        return tuple(i for i in range(self.nvars) if any(e[i] for e, _ in self.terms))

    def coefficient(self, exponent: Sequence[int]) -> Coefficient:
        return self.as_dict.get(tuple(exponent), self.field.zero())

    # Arithmetic

    def _coerce(self, other: Any) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.field != self.field or other.nvars != self.nvars:
                raise InputError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(self.field, self.nvars, other)
        return NotImplemented

    def __add__(self, other: Any) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        merged = dict(self.terms)
        for exponent, coefficient in other.terms:
            merged[exponent] = self.field.add(merged.get(exponent, self.field.zero()), coefficient)
        return Polynomial(self.field, self.nvars, merged)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.field, self.nvars, tuple((e, self.field.neg(c)) for e, c in self.terms))

    def __sub__(self, other: Any) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other: Any) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other: Any) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        product: Dict[Exponent, Coefficient] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                exponent = _monomial_product(e1, e2)
                product[exponent] = self.field.add(
                    product.get(exponent, self.field.zero()), self.field.mul(c1, c2)
                )
        return Polynomial(self.field, self.nvars, product)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "Polynomial":
        if power < 0:
            raise InputError("negative powers are not polynomials")
        result = Polynomial.constant(self.field, self.nvars, 1)
        for _ in range(power):
            result = result * self
        return result


@dataclass(frozen=True)
class GradingSpec:
    """Degree assignment: variable index -> DegreeVector of a common dimension.

    ``torsion`` lists the invariant factors > 1 dropped when the grading was
    computed as a quotient of Z^n; it is empty for hand-written gradings.
    """

    dimension: int
    degrees: Tuple[DegreeVector, ...]
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        degrees = tuple(d if isinstance(d, DegreeVector) else DegreeVector(tuple(d)) for d in self.degrees)
        for degree in degrees:
            if degree.dimension != self.dimension:
                raise DimensionMismatchError(
                    f"degree {degree} does not have dimension {self.dimension}"
                )
        object.__setattr__(self, "degrees", degrees)
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))

    @classmethod
    def standard(cls, nvars: int) -> "GradingSpec":
        return cls(1, tuple(DegreeVector.of(1) for _ in range(nvars)))

    @property
    def num_variables(self) -> int:
        return len(self.degrees)


@dataclass(frozen=True)
class MGPolyRing:
    """Polynomial ring over a field with a degree for every variable."""

    variables: Tuple[str, ...]
    grading: GradingSpec
    field: CoefficientField = dataclass_field(default_factory=CoefficientField)

    def __post_init__(self):
        variables = tuple(self.variables)
        object.__setattr__(self, "variables", variables)
        for name in variables:
            if not _NAME_RE.match(name):
                raise InputError(f"invalid variable name {name!r}")
        if len(set(variables)) != len(variables):
            raise InputError("duplicate variable names")
        if self.grading.num_variables != len(variables):
            raise InputError(
                f"grading assigns {self.grading.num_variables} degrees to {len(variables)} variables"
            )

    @classmethod
    def standard(cls, variables: Sequence[str], field: Optional[CoefficientField] = None) -> "MGPolyRing":
        return cls(tuple(variables), GradingSpec.standard(len(variables)), field or CoefficientField())

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def rank(self) -> int:
        return self.grading.dimension

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise InputError(f"unknown variable {name!r}") from None

    def degree_of(self, index: int) -> DegreeVector:
        if not 0 <= index < self.nvars:
            raise InputError(f"unknown variable index {index}")
        return self.grading.degrees[index]

    def var(self, name: Union[str, int]) -> Polynomial:
        index = self.index(name) if isinstance(name, str) else name
        self.degree_of(index)
        return Polynomial.variable(self.field, self.nvars, index)

    def gens(self) -> Tuple[Polynomial, ...]:
        return tuple(self.var(i) for i in range(self.nvars))

    def constant(self, value: Coefficient) -> Polynomial:
        return Polynomial.constant(self.field, self.nvars, value)

    def polynomial(self, terms: Union[Mapping, Iterable]) -> Polynomial:
        return Polynomial(self.field, self.nvars, terms)

    def with_field(self, field: CoefficientField) -> "MGPolyRing":
        return MGPolyRing(self.variables, self.grading, field)

    def with_grading(self, grading: GradingSpec) -> "MGPolyRing":
        return MGPolyRing(self.variables, grading, self.field)


@dataclass(frozen=True)
class IdealPresentation:
    """An ideal given by a list of nonzero generators."""

    ring: MGPolyRing
    generators: Tuple[Polynomial, ...]

    def __post_init__(self):
        generators = tuple(self.generators)
        object.__setattr__(self, "generators", generators)
        for generator in generators:
            if generator.is_zero():
                raise InputError("ideal generators must be nonzero")
            if generator.nvars != self.ring.nvars or generator.field != self.ring.field:
                raise InputError("generator does not belong to the ring")

    def with_field(self, field: CoefficientField) -> "IdealPresentation":
        ring = self.ring.with_field(field)
        return IdealPresentation(
            ring, tuple(Polynomial(field, ring.nvars, tuple((e, self.ring.field.lift(c)) for e, c in g.terms))
                        for g in self.generators)
        )

    def with_ring(self, ring: MGPolyRing) -> "IdealPresentation":
        """Same generators over a ring with the same variables (e.g. regraded)."""
        if ring.nvars != self.ring.nvars or ring.field != self.ring.field:
            raise InputError("target ring has different variables or field")
        return IdealPresentation(ring, self.generators)

    def used_variables(self) -> Tuple[int, ...]:
        used = set()
        for generator in self.generators:
            used.update(generator.support_variables())
        return tuple(sorted(used))
