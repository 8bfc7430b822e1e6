"""Exception hierarchy for the graded Stillman toolkit.

Everything derives from ``ValueError`` so callers that only care about
"bad request vs. everything else" can keep catching ``ValueError``.
"""

from typing import Optional


class StillmanError(ValueError):
    """Base class for all library errors."""


class InputError(StillmanError):
    """Malformed or inconsistent input."""


class DimensionMismatchError(InputError):
    """Vectors or matrices of incompatible dimensions."""


class RingSyntaxError(InputError):
    """Syntax error in the ring/ideal text format."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class AnalysisRejected(StillmanError):
    """The input is well formed but the requested analysis does not apply."""

    def __init__(self, message: str, certificate: Optional[object] = None):
        super().__init__(message)
        self.certificate = certificate


class NotPointedError(AnalysisRejected):
    """Membership and order questions need a pointed monoid."""


class NotMemberError(StillmanError):
    """Element is not in the monoid."""


class InhomogeneousError(StillmanError):
    """A generator is not homogeneous under the requested weight."""


class ResourceLimitExceeded(StillmanError):
    """Gröbner pair queue grew past the configured cap."""


class ComputationCancelled(StillmanError):
    """The caller's cancellation event was set."""
