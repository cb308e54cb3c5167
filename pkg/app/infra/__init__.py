# Infrastructure (exact q-series, special functions, theta numerics, compiled kernels, errors)

from app.infra.errors import (
    DivergentSeriesError,
    DomainError,
    ExprSyntaxError,
    InvalidMultiplierError,
    NonInvertibleSeriesError,
    QuadratureError,
    TruncationError,
    UnknownCheckError,
    UnknownCurveError,
    VerifyError,
    VerifyErrorCode,
)
from app.infra.qseries import FormalSeries

__all__ = [
    "DivergentSeriesError",
    "DomainError",
    "ExprSyntaxError",
    "InvalidMultiplierError",
    "NonInvertibleSeriesError",
    "QuadratureError",
    "TruncationError",
    "UnknownCheckError",
    "UnknownCurveError",
    "VerifyError",
    "VerifyErrorCode",
    "FormalSeries",
]
