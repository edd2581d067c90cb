"""
Testes de divisibilidade Γ(t) = Γ(t←t′) Γ(t′) e o lema sobre inversas
estocásticas.
"""

from typing import Tuple

import numpy as np

from core.exceptions import DivisibilityUndecidableError, InternalInconsistencyError, SingularMatrixError
from core.types import STRUCTURAL_TOL
from infrastructure.logging import get_logger
from stochastic.stochastic_model import StochasticMatrix, is_column_stochastic

logger = get_logger(__name__)

# Acima deste número de condição Γ(t′) é tratada como singular
SINGULAR_CONDITION = 1e12


def condition_number(M: np.ndarray) -> float:
    with np.errstate(divide="ignore", invalid="ignore"):
        cond = np.linalg.cond(M)
    return float(cond) if np.isfinite(cond) else float("inf")


def is_permutation(gamma: StochasticMatrix, tol: float = STRUCTURAL_TOL) -> bool:
    entries = gamma.entries
    near_one = np.abs(entries - 1.0) <= tol
    near_zero = np.abs(entries) <= tol
    if not np.all(near_one | near_zero):
        return False
    return bool(np.all(near_one.sum(axis=0) == 1) and np.all(near_one.sum(axis=1) == 1))


def check_divisible_at(
    gamma_t: StochasticMatrix,
    gamma_tp: StochasticMatrix,
    tol: float = STRUCTURAL_TOL,
) -> Tuple[bool, np.ndarray]:
    """
    Decide a divisibilidade em t′ pelo candidato Γ̃(t←t′) = Γ(t) Γ⁻¹(t′).

    Para Γ(t′) inversível o candidato é a única solução linear, então o
    resultado é True sse ele próprio for estocástico por colunas.

    Raises:
        DivisibilityUndecidableError: Γ(t′) singular
    """
    cond = condition_number(gamma_tp.entries)
    if cond > SINGULAR_CONDITION:
        raise DivisibilityUndecidableError(cond)

    # X Γ(t′) = Γ(t)  ⇔  Γ(t′)ᵀ Xᵀ = Γ(t)ᵀ
    candidate = np.linalg.solve(gamma_tp.entries.T, gamma_t.entries.T).T
    divisible = is_column_stochastic(candidate, tol)
    logger.debug(
        "Divisibility candidate computed",
        extra={"divisible": divisible, "condition_number": cond, "min_entry": float(candidate.min())},
    )
    return divisible, candidate


def stochastic_inverse_is_permutation(gamma: StochasticMatrix, tol: float = STRUCTURAL_TOL) -> bool:
    """
    True sse Γ⁻¹ é estocástica por colunas.

    Uma inversa estocástica só existe quando Γ é uma permutação; um
    contraexemplo é sinalizado como inconsistência interna.
    """
    cond = condition_number(gamma.entries)
    if cond > SINGULAR_CONDITION:
        raise SingularMatrixError("Gamma", cond)

    inverse = np.linalg.inv(gamma.entries)
    inverse_stochastic = is_column_stochastic(inverse, tol)
    if inverse_stochastic and not is_permutation(gamma, tol):
        deviation = float(np.min(np.abs(gamma.entries - np.round(gamma.entries))))
        raise InternalInconsistencyError("stochastic inverse of a non-permutation", deviation, tol)
    return inverse_stochastic
