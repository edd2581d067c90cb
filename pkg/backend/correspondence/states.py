"""
Matrizes densidade, vetores de estado, valores esperados e a imagem de
Heisenberg.
"""

import numpy as np

from core.exceptions import DimensionError, InternalInconsistencyError, InvalidIndexError
from core.linalg import as_square, dagger, require_self_adjoint
from core.types import STRUCTURAL_TOL
from correspondence.correspondence_model import DensityMatrix, EvolutionOperator, StateVector
from stochastic.stochastic_model import ProbabilityVector


def density_matrix(theta: EvolutionOperator, p0: ProbabilityVector) -> DensityMatrix:
    """ρ(t) = Θ(t) [Σ_j p_j(0) P_j] Θ†(t)."""
    if theta.n != p0.n:
        raise DimensionError("density_matrix", theta.n, p0.n)
    rho = (theta.theta * p0.entries) @ dagger(theta.theta)
    return DensityMatrix(0.5 * (rho + dagger(rho)), tol=max(theta.tol, p0.tol))


def state_vector(theta: EvolutionOperator, j: int) -> StateVector:
    """Ψ(t) = Θ(t) e_j, a j-ésima coluna de Θ."""
    if not 0 <= j < theta.n:
        raise InvalidIndexError("j", j, (0, theta.n))
    return StateVector(theta.theta[:, j].copy(), tol=theta.tol)


def configuration_probabilities(rho: DensityMatrix) -> ProbabilityVector:
    """p_i(t) = tr(P_i ρ(t))."""
    return ProbabilityVector(rho.probabilities(), tol=rho.tol)


def expectation_qm(A, rho: DensityMatrix, tol: float = STRUCTURAL_TOL) -> float:
    """⟨A⟩ = tr(A ρ) para A autoadjunta."""
    A = require_self_adjoint(A, "A", tol)
    if A.shape[0] != rho.n:
        raise DimensionError("expectation_qm", rho.n, A.shape[0])
    value = np.trace(A @ rho.rho)
    if abs(value.imag) >= tol:
        raise InternalInconsistencyError("imaginary part of tr(A rho)", abs(value.imag), tol)
    return float(value.real)


def to_heisenberg(A, theta: EvolutionOperator) -> np.ndarray:
    """A^H(t) = Θ†(t) A(t) Θ(t)."""
    A = as_square(A, "A")
    if A.shape[0] != theta.n:
        raise DimensionError("to_heisenberg", theta.n, A.shape[0])
    return dagger(theta.theta) @ A @ theta.theta
