"""Translate library errors into HTTP responses."""

from fastapi import HTTPException

from app.errors import InputError, StillmanError


def http_error(exc: StillmanError) -> HTTPException:
    status_code = 400 if isinstance(exc, InputError) else 422
    return HTTPException(status_code=status_code, detail=str(exc))
