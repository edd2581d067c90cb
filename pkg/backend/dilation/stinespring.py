"""
Dilatação de Stinespring de um conjunto de N operadores de Kraus.

A isometria parcial Ṽ_{(iβm),(jl)} = K_{(β+i) mod N, ij} δ_{lm} ocupa as
colunas j·N² + l; o restante vem de Gram-Schmidt na base canônica. Com essa
escolha o conjunto {P_β} vira exatamente a identidade N³×N³.
"""

import numpy as np

from core.exceptions import InternalInconsistencyError, KrausIdentityError, PreconditionError
from core.linalg import complete_isometry, configuration_pvm, max_abs, unitarity_residual
from core.types import GRAM_SCHMIDT_REJECT, STRUCTURAL_TOL
from correspondence.correspondence_model import KrausSet
from dilation.dilated import dilated_dictionary
from dilation.dilation_model import StinespringResult
from infrastructure.logging import get_logger, log_duration

logger = get_logger(__name__)


def triple_index(i: int, beta: int, m: int, n: int) -> int:
    return i * n * n + beta * n + m


def partial_isometry(kraus: KrausSet) -> np.ndarray:
    """Ṽ como matriz N³×N² com a coluna (j, l) na posição j·N + l."""
    n = kraus.n
    V = np.zeros((n ** 3, n * n), dtype=complex)
    for j in range(n):
        for l in range(n):
            col = j * n + l
            for i in range(n):
                for beta in range(n):
                    V[triple_index(i, beta, l, n), col] = kraus.operators[(beta + i) % n][i, j]
    return V


def embed_columns(V: np.ndarray, n: int, reject: float = GRAM_SCHMIDT_REJECT) -> np.ndarray:
    """Completa Ṽ e põe a coluna (j, l) no índice j·N² + l."""
    side = n ** 3
    completed = complete_isometry(V, reject=reject)
    placed = [j * n * n + l for j in range(n) for l in range(n)]
    taken = set(placed)
    free = [k for k in range(side) if k not in taken]
    U = np.empty((side, side), dtype=complex)
    U[:, placed] = completed[:, : n * n]
    U[:, free] = completed[:, n * n:]
    return U


@log_duration("stinespring_dilate")
def stinespring_dilate(
    kraus,
    gamma: int = 0,
    tol: float = STRUCTURAL_TOL,
    reject: float = GRAM_SCHMIDT_REJECT,
) -> StinespringResult:
    """
    Unitária N³×N³ cujo dicionário dilatado (D = N², rótulo γ) reproduz
    Γ_ij = Σ_β |K_β,ij|².

    Raises:
        PreconditionError: identidade de Kraus violada ou número de operadores ≠ N
        InternalInconsistencyError: unitariedade ou reprodução de Γ falham
    """
    if not isinstance(kraus, KrausSet):
        try:
            kraus = KrausSet(tuple(kraus))
        except KrausIdentityError as exc:
            raise PreconditionError("stinespring_dilate", exc.message) from exc
    n = kraus.n
    if len(kraus) != n:
        raise PreconditionError("stinespring_dilate", f"expected {n} Kraus operators, got {len(kraus)}")
    if not 0 <= gamma < n:
        raise PreconditionError("stinespring_dilate", f"ancilla label must lie in [0, {n}), got {gamma}")

    U = embed_columns(partial_isometry(kraus), n, reject)
    residual = unitarity_residual(U)
    if residual > tol:
        raise InternalInconsistencyError("Stinespring unitarity", residual, tol)

    expected = sum(np.abs(K) ** 2 for K in kraus.operators)
    reproduced = dilated_dictionary(U, configuration_pvm(n * n), gamma, tol=tol)
    reproduction = max_abs(reproduced.entries - expected)
    if reproduction > tol:
        raise InternalInconsistencyError("Stinespring reproduction of Gamma", reproduction, tol)

    logger.info("Stinespring dilation built", extra={"n": n, "side": n ** 3, "residual": reproduction})
    return StinespringResult(
        kraus_in=kraus,
        unitary_out=U,
        ancilla_label=gamma,
        unitarity_residual=residual,
        reproduction_residual=reproduction,
    )

