"""Degree sequences, factorization certificates and the Stillman bound report."""

from dataclasses import dataclass
from typing import Optional, Tuple

from app.errors import DimensionMismatchError, InputError
from app.models.exact import DegreeVector, sum_vectors
from app.models.monoid import NonBfCertificate
from app.models.resolution import BettiTable


@dataclass(frozen=True)
class DegreeSequence:
    """Per-generator degree bounds d_1, ..., d_n."""

    degrees: Tuple[DegreeVector, ...]

    def __post_init__(self):
        degrees = tuple(d if isinstance(d, DegreeVector) else DegreeVector(tuple(d)) for d in self.degrees)
        if not degrees:
            raise InputError("a degree sequence needs at least one degree")
        if len({d.dimension for d in degrees}) != 1:
            raise DimensionMismatchError("degrees in a sequence must share a dimension")
        object.__setattr__(self, "degrees", degrees)

    @classmethod
    def parse(cls, text: str) -> "DegreeSequence":
        parts = [part for part in text.split(";") if part.strip()]
        return cls(tuple(DegreeVector.parse(part) for part in parts))

    @property
    def dimension(self) -> int:
        return self.degrees[0].dimension

    def __len__(self) -> int:
        return len(self.degrees)

    def __str__(self) -> str:
        return ";".join(str(d) for d in self.degrees)


@dataclass(frozen=True)
class FactorizationCert:
    """A factorization target = parts[0] + ... + parts[B-1] into nonzero parts."""

    target: DegreeVector
    parts: Tuple[DegreeVector, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if any(part.is_zero() for part in parts):
            raise InputError("factorization parts must be nonzero")
        if sum_vectors(parts, self.target.dimension) != self.target:
            raise InputError("factorization parts do not sum to the target")

    @property
    def length(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class BoundReport:
    """Everything the toolkit can say about a projective dimension bound.

    The non-effective bound itself is never computed; the report carries the
    quantities that stand in for it. A support without bounded factorization
    admits no bound, so its report carries the certificate and no bounds.
    """

    support_bf: bool
    witness: Optional[DegreeVector]
    certificate: Optional[NonBfCertificate]
    flatten_bounds: Tuple[int, ...]
    flattened_degrees: Tuple[int, ...]
    known_bound: Optional[int]
    hilbert_bound: Optional[int]
    pdim: Optional[int]
    pdim_weight: Optional[Tuple[int, ...]]
    regular_sequence: Optional[bool]
    finest_rank: Optional[int]
    finest_torsion: Tuple[int, ...]
    refined_degrees: Tuple[DegreeVector, ...]
    betti: Optional[BettiTable] = None
    notes: Tuple[str, ...] = ()

    @classmethod
    def unbounded(cls, certificate: NonBfCertificate, notes: Tuple[str, ...] = ()) -> "BoundReport":
        return cls(
            support_bf=False,
            witness=None,
            certificate=certificate,
            flatten_bounds=(),
            flattened_degrees=(),
            known_bound=None,
            hilbert_bound=None,
            pdim=None,
            pdim_weight=None,
            regular_sequence=None,
            finest_rank=None,
            finest_torsion=(),
            refined_degrees=(),
            notes=notes,
        )

    def __post_init__(self):
        if self.support_bf:
            if self.witness is None or self.certificate is not None:
                raise ValueError("a bounded report needs a witness and no certificate")
            if self.hilbert_bound is None:
                raise ValueError("a bounded report needs a Hilbert bound")
        else:
            if self.certificate is None or self.witness is not None:
                raise ValueError("an unbounded report needs a certificate and no witness")
            if self.flatten_bounds or self.known_bound is not None or self.hilbert_bound is not None:
                raise ValueError("an unbounded report carries no bounds")
            if self.pdim is not None:
                raise ValueError("an unbounded report carries no pdim")
        if self.pdim is not None:
            if self.pdim > self.hilbert_bound:
                raise ValueError(f"pdim {self.pdim} exceeds the Hilbert bound {self.hilbert_bound}")
            if self.known_bound is not None and self.pdim > self.known_bound:
                raise ValueError(f"pdim {self.pdim} exceeds the known bound {self.known_bound}")
