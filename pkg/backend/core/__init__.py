from .types import CheckStatus, CheckResult
from .exceptions import (
    CorrespondenceError,
    DimensionError,
    ValidationError,
    NonFiniteError,
    StochasticityError,
    ProbabilityError,
    NotUnitaryError,
    NotSelfAdjointError,
    KrausIdentityError,
    InvalidIndexError,
    NonInjectiveMapError,
    PreconditionError,
    SingularMatrixError,
    DivisibilityUndecidableError,
    InternalInconsistencyError,
    EvaluationError,
    ScenarioError,
    UnknownQueryError,
)

__all__ = [
    "CheckStatus",
    "CheckResult",
    "CorrespondenceError",
    "DimensionError",
    "ValidationError",
    "NonFiniteError",
    "StochasticityError",
    "ProbabilityError",
    "NotUnitaryError",
    "NotSelfAdjointError",
    "KrausIdentityError",
    "InvalidIndexError",
    "NonInjectiveMapError",
    "PreconditionError",
    "SingularMatrixError",
    "DivisibilityUndecidableError",
    "InternalInconsistencyError",
    "EvaluationError",
    "ScenarioError",
    "UnknownQueryError",
]
