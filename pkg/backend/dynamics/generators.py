"""
Avaliação de famílias, derivadas por diferenças finitas e Hamiltonianos.
"""

from typing import Callable, Sequence, Tuple

import numpy as np

from core.exceptions import NotUnitaryError, PreconditionError
from core.linalg import dagger, require_unitary, symmetrize, unitarity_residual
from core.types import FINITE_DIFFERENCE_DT, STRUCTURAL_TOL
from dynamics.family_model import Domain, Hamiltonian, UnitaryFamily, UNBOUNDED
from infrastructure.logging import get_logger

logger = get_logger(__name__)

HamiltonianProvider = Callable[[float], np.ndarray]


def evaluate(family: UnitaryFamily, t: float, tol: float = STRUCTURAL_TOL) -> np.ndarray:
    """
    U(t), verificada como unitária.

    Raises:
        EvaluationError: t fora do domínio da família
        NotUnitaryError: U(t) não unitária dentro de tol
    """
    family.check_domain(t)
    U = family.unitary(t)
    residual = unitarity_residual(U)
    if residual > tol:
        raise NotUnitaryError(f"U({t})", residual, tol)
    return U


# =============================================================================
# DIFERENÇAS FINITAS
# =============================================================================

def stencil(
    t: float,
    dt: float,
    breakpoints: Sequence[float] = (),
    domain: Domain = UNBOUNDED,
) -> Tuple[Tuple[float, ...], Tuple[float, ...]]:
    """
    Nós e pesos de uma derivada de segunda ordem em t.

    Central por padrão; unilateral quando [t − dt, t + dt] cruza um
    breakpoint ou sai do domínio. Em t = b usa-se o lado direito.
    """
    if dt <= 0:
        raise PreconditionError("finite difference", f"dt must be positive, got {dt}")
    lo, hi = domain
    backward = t + dt > hi
    forward = t - dt < lo
    for b in breakpoints:
        if t < b <= t + dt:
            backward = True
        elif t - dt < b <= t:
            forward = True
    if forward and backward:
        raise PreconditionError("finite difference", f"no smooth window of width {dt} around t={t}")
    if forward:
        return (t, t + dt, t + 2 * dt), (-1.5 / dt, 2.0 / dt, -0.5 / dt)
    if backward:
        return (t - 2 * dt, t - dt, t), (0.5 / dt, -2.0 / dt, 1.5 / dt)
    return (t - dt, t + dt), (-0.5 / dt, 0.5 / dt)


def derivative(
    f: Callable[[float], np.ndarray],
    t: float,
    dt: float = FINITE_DIFFERENCE_DT,
    breakpoints: Sequence[float] = (),
    domain: Domain = UNBOUNDED,
):
    nodes, weights = stencil(t, dt, breakpoints, domain)
    return sum(w * f(s) for s, w in zip(nodes, weights))


def family_derivative(family: UnitaryFamily, t: float, dt: float = FINITE_DIFFERENCE_DT) -> np.ndarray:
    """∂U/∂t por diferenças finitas, respeitando breakpoints e domínio."""
    family.check_domain(t)
    return derivative(family.unitary, t, dt, family.breakpoints, family.domain)


# =============================================================================
# HAMILTONIANO
# =============================================================================

def hamiltonian_from_family(
    family: UnitaryFamily,
    t: float,
    dt: float = FINITE_DIFFERENCE_DT,
    tol: float = 1e-8,
) -> Hamiltonian:
    """
    H(t) = iħ (∂U/∂t) U†(t), simetrizado como (H + H†)/2.

    O resíduo de simetrização fica em ``symmetrization_residual``.
    """
    dU = family_derivative(family, t, dt)
    raw = 1j * family.hbar * dU @ dagger(family.unitary(t))
    H, residual = symmetrize(raw)
    if residual > tol:
        logger.warning(
            "Large symmetrization residual in finite-difference Hamiltonian",
            extra={"t": t, "dt": dt, "residual": residual},
        )
    return Hamiltonian(H=H, hbar=family.hbar, symmetrization_residual=residual)


def hamiltonian_provider(family: UnitaryFamily, dt: float = FINITE_DIFFERENCE_DT) -> HamiltonianProvider:
    """t ↦ H(t) por diferenças finitas (sem estado entre chamadas)."""

    def provider(t: float) -> np.ndarray:
        return hamiltonian_from_family(family, t, dt).H

    return provider


def exact_provider(family: UnitaryFamily) -> HamiltonianProvider:
    def provider(t: float) -> np.ndarray:
        H = family.exact_hamiltonian(t)
        if H is None:
            raise PreconditionError("exact_provider", f"{family.kind.value} family has no closed-form Hamiltonian")
        return H

    return provider


def gauge_transform_hamiltonian(H, V, dV_dagger_dt, hbar: float = 1.0) -> np.ndarray:
    """H ↦ V H V† − iħ V ∂V†/∂t."""
    V = require_unitary(V, "V")
    return V @ np.asarray(H) @ dagger(V) - 1j * hbar * V @ np.asarray(dV_dagger_dt)


def gauge_transformed_hamiltonian(
    family: UnitaryFamily,
    V_of_t: Callable[[float], np.ndarray],
    t: float,
    dt: float = FINITE_DIFFERENCE_DT,
) -> np.ndarray:
    """Hamiltoniano no referencial V(t), com ∂V†/∂t por diferenças finitas."""
    H = hamiltonian_from_family(family, t, dt).H
    dV_dagger = derivative(lambda s: dagger(V_of_t(s)), t, dt, family.breakpoints, family.domain)
    return gauge_transform_hamiltonian(H, V_of_t(t), dV_dagger, family.hbar)
