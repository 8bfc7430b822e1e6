"""Computation services for the Graded Stillman Toolkit."""

from app.services.resolution_service import ResolutionService
from app.services.stillman_service import KnownBoundsTable, StillmanService

__all__ = [
    "ResolutionService",
    "StillmanService",
    "KnownBoundsTable",
]
