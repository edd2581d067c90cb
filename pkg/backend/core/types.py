from dataclasses import dataclass, field
from typing import Any, Dict, Optional
from enum import Enum


# Tolerâncias padrão (sobrescrevíveis por chamada, cenário ou --tol)
STRUCTURAL_TOL = 1e-10
PROBABILITY_TOL = 1e-12
DEGENERACY_TOL = 1e-8
GRAM_SCHMIDT_REJECT = 1e-8
DIVISION_ZERO_TOL = 1e-10
FINITE_DIFFERENCE_DT = 1e-5
RK4_STEPS = 1000
INTEGRATION_TOL = 1e-6
EIGENVALUE_FLOOR = -1e-10


class CheckStatus(str, Enum):
    PASSED = "passed"
    FAILED = "failed"
    SKIPPED = "skipped"


@dataclass
class CheckResult:
    """Resultado de uma verificação numérica"""
    name: str
    status: CheckStatus
    residual: float = 0.0
    tolerance: float = STRUCTURAL_TOL
    detail: Optional[str] = None
    extra: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_residual(
        cls,
        name: str,
        residual: float,
        tolerance: float,
        detail: Optional[str] = None,
    ) -> "CheckResult":
        status = CheckStatus.PASSED if residual <= tolerance else CheckStatus.FAILED
        return cls(name=name, status=status, residual=float(residual), tolerance=tolerance, detail=detail)

    @property
    def passed(self) -> bool:
        return self.status != CheckStatus.FAILED

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "status": self.status.value,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "detail": self.detail or "",
        }

    def __repr__(self) -> str:
        return f"CheckResult({self.name}: {self.status.value}, residual={self.residual:.3e})"
