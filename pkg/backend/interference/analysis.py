"""
Operadores de evolução relativa e a fórmula de interferência.

A discrepância é calculada por duas rotas independentes: subtração de
matrizes e soma dos termos cruzados k ≠ l com Ψ(t′) = U(t′) e_j0.
"""

from typing import List, Optional, Sequence, Tuple

import numpy as np

from core.exceptions import DimensionError, InternalInconsistencyError, InvalidIndexError
from core.linalg import dagger, max_abs
from core.types import DIVISION_ZERO_TOL, PROBABILITY_TOL, STRUCTURAL_TOL
from dynamics.family_model import UnitaryFamily
from dynamics.generators import evaluate
from infrastructure.logging import get_logger, log_duration
from interference.interference_model import InterferenceReport, ProfilePoint

logger = get_logger(__name__)


def relative_evolution(family: UnitaryFamily, t: float, t_prime: float, tol: float = STRUCTURAL_TOL) -> np.ndarray:
    """
    U(t←t′) = U(t) U†(t′).

    Raises:
        InternalInconsistencyError: lei de composição violada além de tol
    """
    U_t = evaluate(family, t)
    U_tp = evaluate(family, t_prime)
    relative = U_t @ dagger(U_tp)
    residual = max_abs(relative @ U_tp - U_t)
    if residual > tol:
        raise InternalInconsistencyError("composition law U(t) = U(t<-t')U(t')", residual, tol)
    return relative


def cross_terms(relative: np.ndarray, psi_tp: np.ndarray) -> np.ndarray:
    """Σ_{k≠l} conj(U_ik Ψ_k) U_il Ψ_l para cada i."""
    n = relative.shape[0]
    terms = np.empty(n)
    off_diagonal = ~np.eye(n, dtype=bool)
    for i in range(n):
        a = relative[i, :] * psi_tp
        pairs = np.conj(a)[:, None] * a[None, :]
        terms[i] = np.real(pairs[off_diagonal].sum())
    return terms


def _marginal(column: np.ndarray, subject_dims: Optional[Tuple[int, int]]) -> np.ndarray:
    if subject_dims is None:
        return column
    d_s, d_e = subject_dims
    if d_s * d_e != column.shape[0]:
        raise DimensionError("subject_dims", column.shape[0], subject_dims)
    return column.reshape(d_s, d_e).sum(axis=1)


def interference_report(
    family: UnitaryFamily,
    j0: int,
    t: float,
    t_prime: float,
    subject_dims: Optional[Tuple[int, int]] = None,
    tol: float = PROBABILITY_TOL,
) -> InterferenceReport:
    """
    Compara Γ(t) com Γ(t←t′)Γ(t′).

    Com ``subject_dims`` = (dS, dE) a discrepância da coluna j0 é
    marginalizada sobre o segundo fator antes de tomar o máximo.
    """
    if not 0 <= j0 < family.n:
        raise InvalidIndexError("j0", j0, (0, family.n))

    U_t = evaluate(family, t)
    U_tp = evaluate(family, t_prime)
    relative = relative_evolution(family, t, t_prime)

    gamma_actual = np.abs(U_t) ** 2
    gamma_divided = (np.abs(relative) ** 2) @ (np.abs(U_tp) ** 2)
    discrepancy = gamma_actual - gamma_divided

    terms = cross_terms(relative, U_tp[:, j0])
    route_residual = max_abs(discrepancy[:, j0] - terms)
    if route_residual > tol:
        raise InternalInconsistencyError("interference subtraction vs cross-term routes", route_residual, tol)

    column = _marginal(discrepancy[:, j0], subject_dims)
    report = InterferenceReport(
        t=t,
        t_prime=t_prime,
        j0=j0,
        gamma_actual=gamma_actual,
        gamma_divided=gamma_divided,
        discrepancy=discrepancy,
        cross_terms=terms,
        max_abs_discrepancy=float(np.max(np.abs(column))),
        route_residual=route_residual,
        subject_dims=subject_dims,
    )
    logger.debug("Interference report", extra={"t": t, "t_prime": t_prime, "max": report.max_abs_discrepancy})
    return report


@log_duration("divisibility_profile")
def divisibility_profile(
    family: UnitaryFamily,
    j0: int,
    t: float,
    grid: Sequence[float],
    subject_dims: Optional[Tuple[int, int]] = None,
    zero_tol: float = DIVISION_ZERO_TOL,
) -> List[ProfilePoint]:
    """Discrepância máxima para cada t′ da grade; zero marca evento de divisão."""
    profile = []
    for t_prime in grid:
        report = interference_report(family, j0, t, float(t_prime), subject_dims)
        profile.append(
            ProfilePoint(
                t_prime=float(t_prime),
                max_abs_discrepancy=report.max_abs_discrepancy,
                division_event=report.max_abs_discrepancy <= zero_tol,
            )
        )
    return profile
