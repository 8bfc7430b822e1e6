"""Payload models shared by the json-lines CLI output and the HTTP API."""

from typing import List, Optional

from pydantic import BaseModel, Field

from app.models.monoid import NonBfCertificate
from app.models.report import BoundReport, FactorizationCert
from app.models.resolution import BettiTable
from app.models.ring import GradingSpec
from app.services.monoid_service import FactorizationVerdict, PrimeReciprocalForm


# Requests

class MonoidRequest(BaseModel):
    """Generators as degree tuples, e.g. ["(1,0)", "(-2,1)"]."""
    generators: List[str] = Field(..., min_length=1)


class MemberRequest(MonoidRequest):
    element: str


class IdealRequest(BaseModel):
    text: str


class PdimRequest(IdealRequest):
    weight: Optional[List[int]] = None
    auto_weight: bool = False


class ReportRequest(IdealRequest):
    degrees: Optional[str] = None
    compute_pdim: bool = True


# Responses

class BettiEntry(BaseModel):
    homological: int
    degree: int
    rank: int


class CertificatePayload(BaseModel):
    element: str
    relation: List[str]
    multiplicities: List[int]
    text: str


class MonoidCheckPayload(BaseModel):
    generators: List[str]
    pointed: bool
    bounded_factorization: bool
    witness: Optional[str] = None
    certificate: Optional[CertificatePayload] = None


class MemberPayload(BaseModel):
    element: str
    member: bool


class PrimeReciprocalPayload(BaseModel):
    value: str
    member: bool
    whole: Optional[int] = None
    parts: List[List[int]] = []
    chain_bound: Optional[int] = None


class PdimPayload(BaseModel):
    pdim: int
    weight: List[int]
    betti: List[BettiEntry]
    betti_totals: List[int]


class ReportPayload(BaseModel):
    support_bf: bool
    witness: Optional[str]
    certificate: Optional[CertificatePayload]
    flatten_bounds: List[int]
    flattened_degrees: List[int]
    known_bound: Optional[int]
    hilbert_bound: Optional[int]
    pdim: Optional[int]
    pdim_weight: Optional[List[int]]
    regular_sequence: Optional[bool]
    finest_rank: Optional[int]
    finest_torsion: List[int]
    refined_degrees: List[str]
    betti: Optional[List[BettiEntry]]
    notes: List[str]


class RefinePayload(BaseModel):
    rank: int
    torsion: List[int]
    variable_degrees: List[str]
    refined_degrees: List[str]
    coarsening: Optional[List[List[str]]] = None


class FamilyPayload(BaseModel):
    name: str
    n: int
    text: str


class CounterexamplePayload(BaseModel):
    target: str
    parts: List[str]
    text: str


# Builders

def certificate_payload(certificate: Optional[NonBfCertificate]) -> Optional[CertificatePayload]:
    if certificate is None:
        return None
    return CertificatePayload(
        element=str(certificate.element),
        relation=[str(g) for g, _ in certificate.relation],
        multiplicities=list(certificate.multiplicities),
        text=str(certificate),
    )


def betti_payload(table: BettiTable) -> List[BettiEntry]:
    return [BettiEntry(homological=i, degree=d, rank=r) for (i, d), r in table.entries]


def monoid_check_payload(generators: List[str], verdict: FactorizationVerdict) -> MonoidCheckPayload:
    return MonoidCheckPayload(
        generators=generators,
        pointed=verdict.bounded,
        bounded_factorization=verdict.bounded,
        witness=str(verdict.witness.functional) if verdict.witness is not None else None,
        certificate=certificate_payload(verdict.certificate),
    )


def prime_reciprocal_payload(value: str, form: Optional[PrimeReciprocalForm]) -> PrimeReciprocalPayload:
    if form is None:
        return PrimeReciprocalPayload(value=value, member=False)
    return PrimeReciprocalPayload(
        value=value,
        member=True,
        whole=form.whole,
        parts=[[p, h] for p, h in form.parts],
        chain_bound=form.whole + sum(h for _, h in form.parts),
    )


def report_payload(report: BoundReport) -> ReportPayload:
    return ReportPayload(
        support_bf=report.support_bf,
        witness=str(report.witness) if report.witness is not None else None,
        certificate=certificate_payload(report.certificate),
        flatten_bounds=list(report.flatten_bounds),
        flattened_degrees=list(report.flattened_degrees),
        known_bound=report.known_bound,
        hilbert_bound=report.hilbert_bound,
        pdim=report.pdim,
        pdim_weight=list(report.pdim_weight) if report.pdim_weight is not None else None,
        regular_sequence=report.regular_sequence,
        finest_rank=report.finest_rank,
        finest_torsion=list(report.finest_torsion),
        refined_degrees=[str(d) for d in report.refined_degrees],
        betti=betti_payload(report.betti) if report.betti is not None else None,
        notes=list(report.notes),
    )


def refine_payload(grading: GradingSpec, refined, coarsening=None) -> RefinePayload:
    return RefinePayload(
        rank=grading.dimension,
        torsion=list(grading.torsion),
        variable_degrees=[str(d) for d in grading.degrees],
        refined_degrees=[str(d) for d in refined],
        coarsening=[[str(x) for x in row] for row in coarsening] if coarsening is not None else None,
    )


def counterexample_payload(factorization: FactorizationCert, text: str) -> CounterexamplePayload:
    return CounterexamplePayload(
        target=str(factorization.target),
        parts=[str(p) for p in factorization.parts],
        text=text,
    )
