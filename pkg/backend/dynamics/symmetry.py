"""
Simetrias dinâmicas e conservação de Noether.
"""

from enum import Enum
from typing import Sequence

import numpy as np

from core.linalg import dagger, max_abs, require_self_adjoint, require_unitary
from core.types import STRUCTURAL_TOL
from correspondence.correspondence_model import DensityMatrix
from dynamics.family_model import UnitaryFamily
from infrastructure.logging import get_logger

logger = get_logger(__name__)


class SymmetryKind(str, Enum):
    UNITARY = "unitary-symmetry"
    ANTI_UNITARY = "anti-unitary-symmetry"
    PHASE = "phase-symmetry"
    NONE = "none"


def classify_symmetry(
    V,
    family: UnitaryFamily,
    times: Sequence[float],
    tol: float = STRUCTURAL_TOL,
) -> SymmetryKind:
    """
    Classifica V pelas amostras W(t) = V U(t) V†.

    Simetria de fase quando |W_ij|² = |U_ij|² em todos os tempos; refinada
    para unitária se W = U e para antiunitária se W = conj(U).
    """
    V = require_unitary(V, "V", tol)
    moduli_match = commutes = conjugates = True
    for t in times:
        U = family.unitary(t)
        W = V @ U @ dagger(V)
        moduli_match &= max_abs(np.abs(W) ** 2 - np.abs(U) ** 2) <= tol
        commutes &= max_abs(W - U) <= tol
        conjugates &= max_abs(W - np.conj(U)) <= tol

    if not moduli_match:
        kind = SymmetryKind.NONE
    elif commutes:
        kind = SymmetryKind.UNITARY
    elif conjugates:
        kind = SymmetryKind.ANTI_UNITARY
    else:
        kind = SymmetryKind.PHASE
    logger.debug("Symmetry classified", extra={"kind": kind.value, "samples": len(times)})
    return kind


def noether_check(G, family: UnitaryFamily, rho0: DensityMatrix, times: Sequence[float]) -> float:
    """max_t |tr(G U(t) ρ(0) U†(t)) − tr(G ρ(0))|."""
    G = require_self_adjoint(G, "G")
    initial = np.real(np.trace(G @ rho0.rho))
    deviation = 0.0
    for t in times:
        U = family.unitary(t)
        value = np.real(np.trace(G @ U @ rho0.rho @ dagger(U)))
        deviation = max(deviation, abs(value - initial))
    return float(deviation)
