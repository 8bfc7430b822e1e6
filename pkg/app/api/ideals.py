"""Ideal analysis API endpoints."""

from fastapi import APIRouter, Depends, HTTPException, Query

from app.api.errors import http_error
from app.errors import AnalysisRejected, InputError, StillmanError
from app.models.report import DegreeSequence
from app.schemas import (
    FamilyPayload,
    IdealRequest,
    PdimPayload,
    PdimRequest,
    RefinePayload,
    ReportPayload,
    ReportRequest,
    betti_payload,
    refine_payload,
    report_payload,
)
from app.services.resolution_service import ResolutionService
from app.services.stillman_service import (
    StillmanService,
    burch_kohn_family,
    find_homogenizing_weight,
    mccullough_family,
    refine,
)
from app.utils.ring_format import format_input, parse_input


router = APIRouter()


def get_stillman_service() -> StillmanService:
    return StillmanService()


def _ideal(request: IdealRequest):
    _, ideal = parse_input(request.text)
    if ideal is None:
        raise InputError("input has no ideal block")
    return ideal


@router.post("/pdim", response_model=PdimPayload)
def compute_pdim(request: PdimRequest, service: StillmanService = Depends(get_stillman_service)):
    """
    Projective dimension and graded Betti numbers of S/I.

    - **weight**: positive integer weights (default all ones)
    - **auto_weight**: search for a weight making the generators homogeneous
    """
    try:
        ideal = _ideal(request)
        weight = request.weight
        if weight is None and request.auto_weight:
            weight = find_homogenizing_weight(ideal)
            if weight is None:
                raise AnalysisRejected("no positive weight makes every generator homogeneous")
        weight = tuple(weight) if weight is not None else (1,) * ideal.ring.nvars
        resolution: ResolutionService = service.resolution
        minimal, betti = resolution.minimalize(resolution.free_resolution(ideal, weight))
    except StillmanError as e:
        raise http_error(e)
    return PdimPayload(
        pdim=minimal.length,
        weight=list(weight),
        betti=betti_payload(betti),
        betti_totals=list(betti.totals()),
    )


@router.post("/report", response_model=ReportPayload)
def stillman_report(request: ReportRequest, service: StillmanService = Depends(get_stillman_service)):
    """Full Stillman bound report."""
    try:
        ideal = _ideal(request)
        degrees = DegreeSequence.parse(request.degrees) if request.degrees else None
        report = service.stillman_report(ideal, degrees, compute_pdim=request.compute_pdim)
    except StillmanError as e:
        raise http_error(e)
    return report_payload(report)


@router.post("/refine", response_model=RefinePayload)
def refine_grading(request: IdealRequest):
    """Finest grading making every generator homogeneous."""
    try:
        refinement = refine(_ideal(request))
    except StillmanError as e:
        raise http_error(e)
    return refine_payload(refinement.grading, refinement.refined_degrees, refinement.coarsening)


@router.get("/families/{name}", response_model=FamilyPayload)
async def family(name: str, n: int = Query(..., ge=1)):
    """Counterexample families in the ring text format."""
    try:
        if name == "mccullough":
            ideal = mccullough_family(n)
        elif name == "burch-kohn":
            ideal = burch_kohn_family(n)
        else:
            raise HTTPException(status_code=404, detail=f"unknown family {name!r}")
    except StillmanError as e:
        raise http_error(e)
    return FamilyPayload(name=name, n=n, text=format_input(ideal.ring, ideal))
