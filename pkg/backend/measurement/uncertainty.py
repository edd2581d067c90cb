"""
Relação de incerteza de Heisenberg-Robertson.
"""

from dataclasses import dataclass

import numpy as np

from core.exceptions import DimensionError
from core.linalg import as_square, commutator
from measurement.observables import observable_matrix

SLACK = 1e-10


@dataclass(frozen=True)
class UncertaintyResult:
    lhs: float
    rhs: float
    satisfied: bool


def spread(X: np.ndarray, rho: np.ndarray) -> float:
    """ΔX = sqrt(max(tr(X²ρ) − tr(Xρ)², 0))."""
    mean = float(np.real(np.trace(X @ rho)))
    variance = float(np.real(np.trace(X @ X @ rho))) - mean ** 2
    return float(np.sqrt(max(variance, 0.0)))


def uncertainty_check(A, B, rho) -> UncertaintyResult:
    """ΔA ΔB ≥ ½|tr(i[A, B] ρ)|, com folga de 1e-10."""
    a = observable_matrix(A)
    b = observable_matrix(B)
    r = as_square(getattr(rho, "rho", rho), "rho")
    if not (a.shape == b.shape == r.shape):
        raise DimensionError("uncertainty_check", a.shape, (b.shape, r.shape))

    lhs = spread(a, r) * spread(b, r)
    rhs = 0.5 * abs(np.trace(1j * commutator(a, b) @ r))
    return UncertaintyResult(lhs=lhs, rhs=float(rhs), satisfied=lhs >= rhs - SLACK)
