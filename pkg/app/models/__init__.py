"""Value types for the Graded Stillman Toolkit."""

from app.models.exact import DegreeVector, IntMatrix, Rational
from app.models.monoid import BuiltinMonoid, FgMonoid, HeightWitness, NonBfCertificate
from app.models.ring import CoefficientField, GradingSpec, IdealPresentation, MGPolyRing, Polynomial
from app.models.resolution import BettiTable, FreeResolutionComplex, OrderKind, PolyMatrix, TermOrder
from app.models.report import BoundReport, DegreeSequence, FactorizationCert

__all__ = [
    "Rational",
    "DegreeVector",
    "IntMatrix",
    "BuiltinMonoid",
    "FgMonoid",
    "HeightWitness",
    "NonBfCertificate",
    "CoefficientField",
    "GradingSpec",
    "MGPolyRing",
    "Polynomial",
    "IdealPresentation",
    "TermOrder",
    "OrderKind",
    "PolyMatrix",
    "FreeResolutionComplex",
    "BettiTable",
    "DegreeSequence",
    "FactorizationCert",
    "BoundReport",
]
