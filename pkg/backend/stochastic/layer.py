"""
Operações da camada estocástica: marginalização bayesiana, médias e as
famílias 2×2 de referência (senoidal e exponencial).
"""

from typing import Sequence

import numpy as np

from core.exceptions import DimensionError, InvalidIndexError
from stochastic.stochastic_model import ProbabilityVector, RandomVariable, StochasticMatrix


def propagate(gamma: StochasticMatrix, p0: ProbabilityVector) -> ProbabilityVector:
    """p(t) = Γ(t) p(0), revalidado como vetor de probabilidade."""
    if gamma.n != p0.n:
        raise DimensionError("propagate", gamma.n, p0.n)
    return ProbabilityVector(gamma.entries @ p0.entries, tol=max(gamma.tol, p0.tol))


def expectation(a: RandomVariable, p: ProbabilityVector) -> float:
    """⟨A⟩ = Σ a_i p_i."""
    if a.n != p.n:
        raise DimensionError("expectation", a.n, p.n)
    return float(np.dot(a.magnitudes, p.entries))


def compose(*gammas: StochasticMatrix) -> StochasticMatrix:
    """Produto Γ_1 Γ_2 ... Γ_k (fecha no conjunto das matrizes estocásticas)."""
    if not gammas:
        raise DimensionError("compose", "at least one matrix", 0)
    result = gammas[0]
    for gamma in gammas[1:]:
        if gamma.n != result.n:
            raise DimensionError("compose", result.n, gamma.n)
        result = result @ gamma
    return result


def matrix_power(gamma: StochasticMatrix, k: int) -> StochasticMatrix:
    if k < 0:
        raise InvalidIndexError("k", k, (0, np.iinfo(np.int64).max))
    return StochasticMatrix(np.linalg.matrix_power(gamma.entries, k), tol=gamma.tol)


def permutation_matrix(perm: Sequence[int]) -> StochasticMatrix:
    """Matriz com Γ_{perm[j], j} = 1 (determinística)."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise InvalidIndexError("perm", list(perm), (0, n))
    entries = np.zeros((n, n))
    entries[list(perm), list(range(n))] = 1.0
    return StochasticMatrix(entries)


def sinusoidal_matrix(omega: float, t: float) -> StochasticMatrix:
    """[[cos²ωt, sin²ωt], [sin²ωt, cos²ωt]]."""
    c2 = np.cos(omega * t) ** 2
    s2 = np.sin(omega * t) ** 2
    return StochasticMatrix(np.array([[c2, s2], [s2, c2]]))


def exponential_matrix(tau: float, t: float) -> StochasticMatrix:
    """Família 2×2 com diagonal e^{−t²/τ²}; τ tem unidade de tempo."""
    decay = np.exp(-(t * t) / (tau * tau))
    return StochasticMatrix(np.array([[decay, 1.0 - decay], [1.0 - decay, decay]]))
