"""
Integração RK4 de passo fixo das equações de Schrödinger e von Neumann.

O intervalo é dividido nos breakpoints do gerador; o último estágio de
cada segmento avalia H imediatamente antes do breakpoint.
"""

from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

import numpy as np

from core.exceptions import DimensionError, PreconditionError
from core.linalg import dagger, symmetrize
from correspondence.correspondence_model import DensityMatrix, StateVector
from dynamics.generators import HamiltonianProvider
from infrastructure.logging import get_logger, log_duration

logger = get_logger(__name__)

DRIFT_WARNING = 1e-8


@dataclass
class IntegrationResult:
    """Estado final renormalizado e o desvio de norma/traço removido"""
    state: object
    drift: float
    steps: int


def segments(t0: float, t_final: float, steps: int, breakpoints: Sequence[float]) -> List[Tuple[float, float, int]]:
    """Divide [t0, t_final] nos breakpoints, repartindo os passos pelo comprimento."""
    lo, hi = min(t0, t_final), max(t0, t_final)
    inner = sorted(b for b in breakpoints if lo < b < hi)
    if t_final < t0:
        inner = inner[::-1]
    nodes = [t0] + inner + [t_final]
    total = abs(t_final - t0)
    result = []
    for a, b in zip(nodes, nodes[1:]):
        share = max(1, int(round(steps * abs(b - a) / total))) if total > 0 else 1
        result.append((a, b, share))
    return result


def _rk4(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    y0: np.ndarray,
    t0: float,
    t_final: float,
    steps: int,
    breakpoints: Sequence[float],
) -> Tuple[np.ndarray, int]:
    if steps < 1:
        raise PreconditionError("rk4", f"steps must be >= 1, got {steps}")
    y = np.array(y0, dtype=complex)
    taken = 0
    for a, b, count in segments(t0, t_final, steps, breakpoints):
        h = (b - a) / count
        # lado esquerdo do breakpoint
        end = np.nextafter(b, a) if b != t_final or b in breakpoints else b
        for k in range(count):
            t = a + k * h
            t_mid = t + 0.5 * h
            t_next = end if k == count - 1 else t + h
            k1 = rhs(t, y)
            k2 = rhs(t_mid, y + 0.5 * h * k1)
            k3 = rhs(t_mid, y + 0.5 * h * k2)
            k4 = rhs(t_next, y + h * k3)
            y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
            taken += 1
    return y, taken


@log_duration("integrate_schrodinger")
def integrate_schrodinger(
    H_of_t: HamiltonianProvider,
    psi0: StateVector,
    t_final: float,
    steps: int,
    hbar: float = 1.0,
    t0: float = 0.0,
    breakpoints: Sequence[float] = (),
) -> IntegrationResult:
    """iħ ∂Ψ/∂t = H(t) Ψ por RK4; o estado final é renormalizado."""

    def rhs(t: float, psi: np.ndarray) -> np.ndarray:
        H = H_of_t(t)
        if H.shape[0] != psi.shape[0]:
            raise DimensionError("integrate_schrodinger", psi.shape[0], H.shape[0])
        return (-1j / hbar) * (H @ psi)

    psi, taken = _rk4(rhs, psi0.psi, t0, t_final, steps, breakpoints)
    norm = float(np.linalg.norm(psi))
    drift = abs(norm - 1.0)
    if drift > DRIFT_WARNING:
        logger.warning("Norm drift above threshold", extra={"drift": drift, "steps": taken})
    return IntegrationResult(state=StateVector(psi / norm), drift=drift, steps=taken)


@log_duration("integrate_von_neumann")
def integrate_von_neumann(
    H_of_t: HamiltonianProvider,
    rho0: DensityMatrix,
    t_final: float,
    steps: int,
    hbar: float = 1.0,
    t0: float = 0.0,
    breakpoints: Sequence[float] = (),
) -> IntegrationResult:
    """iħ ∂ρ/∂t = [H(t), ρ] por RK4; ρ final ressimetrizada e com traço 1."""

    def rhs(t: float, rho: np.ndarray) -> np.ndarray:
        H = H_of_t(t)
        if H.shape != rho.shape:
            raise DimensionError("integrate_von_neumann", rho.shape, H.shape)
        return (-1j / hbar) * (H @ rho - rho @ H)

    rho, taken = _rk4(rhs, rho0.rho, t0, t_final, steps, breakpoints)
    rho, _ = symmetrize(rho)
    trace = float(np.real(np.trace(rho)))
    drift = abs(trace - 1.0)
    if drift > DRIFT_WARNING:
        logger.warning("Trace drift above threshold", extra={"drift": drift, "steps": taken})
    rho = rho / trace
    return IntegrationResult(state=DensityMatrix(0.5 * (rho + dagger(rho))), drift=drift, steps=taken)
