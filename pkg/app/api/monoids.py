"""Support monoid API endpoints."""

from fastapi import APIRouter

from app.api.errors import http_error
from app.errors import StillmanError
from app.models.exact import DegreeVector, parse_rational
from app.models.monoid import FgMonoid
from app.schemas import (
    MemberPayload,
    MemberRequest,
    MonoidCheckPayload,
    MonoidRequest,
    PrimeReciprocalPayload,
    monoid_check_payload,
    prime_reciprocal_payload,
)
from app.services import monoid_service


router = APIRouter()


def _monoid(request: MonoidRequest) -> FgMonoid:
    return FgMonoid.from_generators(DegreeVector.parse(text) for text in request.generators)


@router.post("/check", response_model=MonoidCheckPayload)
def check_monoid(request: MonoidRequest):
    """Pointedness / bounded factorization verdict with witness or certificate."""
    try:
        monoid = _monoid(request)
        verdict = monoid_service.has_bounded_factorization(monoid)
    except StillmanError as e:
        raise http_error(e)
    return monoid_check_payload([str(g) for g in monoid.generators], verdict)


@router.post("/member", response_model=MemberPayload)
def check_member(request: MemberRequest):
    """Membership of an element in a pointed monoid."""
    try:
        monoid = _monoid(request)
        element = DegreeVector.parse(request.element)
        return MemberPayload(element=str(element), member=monoid_service.member(monoid, element))
    except StillmanError as e:
        raise http_error(e)


@router.get("/prime-reciprocal/{value:path}", response_model=PrimeReciprocalPayload)
async def prime_reciprocal(value: str):
    """
    Canonical form in the monoid generated by 1/p for primes p.

    - **value**: a nonnegative rational such as `5/6`
    """
    try:
        q = parse_rational(value)
        form = monoid_service.prime_reciprocal_canonical(q)
    except StillmanError as e:
        raise http_error(e)
    return prime_reciprocal_payload(value, form)
