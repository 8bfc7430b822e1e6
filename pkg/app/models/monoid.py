"""Support monoids and the certificates attached to them."""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence, Tuple

from app.errors import DimensionMismatchError, InputError
from app.models.exact import DegreeVector, sum_vectors


class BuiltinMonoid(str, Enum):
    """Infinitely generated monoids with a known structure."""
    HALFPLANE_PLUS_ORIGIN = "halfplane"       # (Z x Z>0) + {(0,0)}
    PRIME_RECIPROCAL = "prime-reciprocal"     # generated by 1/p, p prime
    PRIME_SHIFT = "prime-shift"               # generated by 1 and n + 1/p_n

    @property
    def dimension(self) -> int:
        return 2 if self is BuiltinMonoid.HALFPLANE_PLUS_ORIGIN else 1


@dataclass(frozen=True)
class FgMonoid:
    """Finitely generated submonoid of Q^k.

    Zero generators are dropped and duplicates removed at construction, so a
    stored generator list is always nonzero and pairwise distinct.
    """

    dimension: int
    generators: Tuple[DegreeVector, ...]

    def __post_init__(self):
        if self.dimension < 0:
            raise InputError("monoid dimension must be nonnegative")
        kept = []
        for generator in self.generators:
            if not isinstance(generator, DegreeVector):
                generator = DegreeVector(tuple(generator))
            if generator.dimension != self.dimension:
                raise DimensionMismatchError(
                    f"generator {generator} does not have dimension {self.dimension}"
                )
            if generator.is_zero() or generator in kept:
                continue
            kept.append(generator)
        object.__setattr__(self, "generators", tuple(kept))

    @classmethod
    def from_generators(
        cls, generators: Iterable, dimension: Optional[int] = None
    ) -> "FgMonoid":
        vectors = [g if isinstance(g, DegreeVector) else DegreeVector(tuple(g)) for g in generators]
        if dimension is None:
            if not vectors:
                raise InputError("dimension is required for a monoid without generators")
            dimension = vectors[0].dimension
        return cls(dimension, tuple(vectors))

    @classmethod
    def parse(cls, text: str) -> "FgMonoid":
        """Parse ``(1,0);(-2,1);(0,1)``."""
        parts = [part for part in text.split(";") if part.strip()]
        if not parts:
            raise InputError("empty generator list")
        return cls.from_generators(DegreeVector.parse(part) for part in parts)

    def __str__(self) -> str:
        return ";".join(str(g) for g in self.generators)


@dataclass(frozen=True)
class HeightWitness:
    """Linear functional taking value at least 1 on every stored generator."""

    functional: DegreeVector
    generators: Tuple[DegreeVector, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        for generator in self.generators:
            if self.functional.dot(generator) < 1:
                raise InputError(
                    f"functional {self.functional} takes value below 1 on {generator}"
                )

    def height(self, degree: DegreeVector):
        return self.functional.dot(degree)


@dataclass(frozen=True)
class NonBfCertificate:
    """A nontrivial nonnegative relation among generators summing to zero.

    ``element`` admits factorizations of every length: add copies of the
    relation to any factorization of it.
    """

    element: DegreeVector
    relation: Tuple[Tuple[DegreeVector, int], ...]

    def __post_init__(self):
        relation = tuple((g, int(k)) for g, k in self.relation)
        object.__setattr__(self, "relation", relation)
        if any(k < 0 for _, k in relation) or not any(k for _, k in relation):
            raise InputError("relation multiplicities must be nonnegative and not all zero")
        total = sum_vectors((g.scale(k) for g, k in relation), self.element.dimension)
        if not total.is_zero():
            raise InputError("relation does not sum to zero")

    @property
    def multiplicities(self) -> Tuple[int, ...]:
        return tuple(k for _, k in self.relation)

    def __str__(self) -> str:
        terms = " + ".join(f"{k}*{g}" for g, k in self.relation if k)
        return f"{terms} = 0"


def relation_from_multiplicities(
    generators: Sequence[DegreeVector], multiplicities: Sequence[int]
) -> Tuple[Tuple[DegreeVector, int], ...]:
    return tuple(zip(generators, multiplicities))
