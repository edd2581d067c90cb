"""
Dicionário entre matrizes de transição e objetos do espaço de Hilbert.

Γ_ij = |Θ_ij|² = tr(Θ† P_i Θ P_j); as duas rotas são calculadas de forma
independente e comparadas.
"""

from typing import Tuple

import numpy as np

from core.exceptions import InternalInconsistencyError
from core.linalg import configuration_projector, dagger, max_abs
from core.types import PROBABILITY_TOL
from correspondence.correspondence_model import EvolutionOperator, KrausSet, StateVector
from stochastic.stochastic_model import ProbabilityVector, StochasticMatrix


def evolution_from_stochastic(gamma: StochasticMatrix) -> EvolutionOperator:
    """Raiz real não negativa Θ_ij = +√Γ_ij (gauge canônico)."""
    return EvolutionOperator(np.sqrt(np.clip(gamma.entries, 0.0, None)).astype(complex), tol=gamma.tol)


def modulus_square_route(theta: np.ndarray) -> np.ndarray:
    return np.abs(theta) ** 2


def trace_route(theta: np.ndarray) -> np.ndarray:
    """Γ_ij = tr(Θ† P_i Θ P_j) avaliado literalmente com os projetores."""
    n = theta.shape[0]
    projectors = [configuration_projector(n, i) for i in range(n)]
    theta_dag = dagger(theta)
    gamma = np.empty((n, n))
    for i, P_i in enumerate(projectors):
        left = theta_dag @ P_i @ theta
        for j, P_j in enumerate(projectors):
            gamma[i, j] = np.real(np.trace(left @ P_j))
    return gamma


def dictionary_routes(theta: EvolutionOperator) -> Tuple[np.ndarray, np.ndarray, float]:
    """Γ pelas duas rotas e o maior desvio entre elas."""
    by_modulus = modulus_square_route(theta.theta)
    by_trace = trace_route(theta.theta)
    return by_modulus, by_trace, max_abs(by_modulus - by_trace)


def stochastic_from_evolution(theta: EvolutionOperator, tol: float = PROBABILITY_TOL) -> StochasticMatrix:
    """
    Matriz de transição de Θ.

    Raises:
        InternalInconsistencyError: rotas de traço e módulo divergem além de tol
    """
    by_modulus, _, residual = dictionary_routes(theta)
    if residual > tol:
        raise InternalInconsistencyError("dictionary trace vs modulus routes", residual, tol)
    return StochasticMatrix(by_modulus, tol=max(tol, theta.tol))


def kraus_from_evolution(theta: EvolutionOperator) -> KrausSet:
    """K_β compartilha a β-ésima coluna de Θ e é nulo no resto."""
    n = theta.n
    operators = []
    for beta in range(n):
        K = np.zeros((n, n), dtype=complex)
        K[:, beta] = theta.theta[:, beta]
        operators.append(K)
    return KrausSet(tuple(operators), tol=theta.tol)


def kraus_decomposition(kraus: KrausSet) -> np.ndarray:
    """Γ_ij = Σ_β tr(K_β† P_i K_β P_j)."""
    n = kraus.n
    projectors = [configuration_projector(n, i) for i in range(n)]
    gamma = np.zeros((n, n))
    for K in kraus.operators:
        K_dag = dagger(K)
        for i, P_i in enumerate(projectors):
            left = K_dag @ P_i @ K
            for j, P_j in enumerate(projectors):
                gamma[i, j] += np.real(np.trace(left @ P_j))
    return gamma


def born_rule(psi: StateVector) -> ProbabilityVector:
    """p_i = |Ψ_i|²."""
    return ProbabilityVector(np.abs(psi.psi) ** 2, tol=psi.tol)
