"""
Decoerência: o sujeito isolado contra o sujeito após o evento de divisão.
"""

import numpy as np

from composite.composite_model import CorrelationMap, DecoherenceResult
from composite.division import correlation_unitary
from core.exceptions import DimensionError, InternalInconsistencyError
from core.linalg import Factor, as_square, dagger, max_abs, partial_trace, require_unitary
from core.types import PROBABILITY_TOL
from correspondence.correspondence_model import DensityMatrix
from stochastic.stochastic_model import ProbabilityVector


def decoherence_compare(U_S, p0, corr: CorrelationMap, tol: float = PROBABILITY_TOL) -> DecoherenceResult:
    """
    ρ isolada = U diag(p0) U†; ρ decoerida = sua diagonal.

    A ρ decoerida é conferida contra o traço parcial, sobre o ambiente, do
    composto correlacionado W (U ⊗ 𝟙)(diag(p0) ⊗ |0⟩⟨0|)(U ⊗ 𝟙)† W†.
    """
    U = require_unitary(as_square(U_S, "U_S"), "U_S")
    p = p0 if isinstance(p0, ProbabilityVector) else ProbabilityVector(p0)
    N, M = corr.subject_dim, corr.environment_dim
    if U.shape[0] != N:
        raise DimensionError("U_S", (N, N), U.shape)
    if p.n != N:
        raise DimensionError("p0", N, p.n)

    isolated = U @ np.diag(p.entries).astype(complex) @ dagger(U)
    isolated = 0.5 * (isolated + dagger(isolated))
    decohered = np.diag(np.diag(isolated))
    off_diagonal = isolated - decohered
    drop = float(np.linalg.norm(off_diagonal, "fro"))

    environment_ready = np.zeros((M, M), dtype=complex)
    environment_ready[0, 0] = 1.0
    evolution = correlation_unitary(corr) @ np.kron(U, np.eye(M))
    joint = evolution @ np.kron(np.diag(p.entries).astype(complex), environment_ready) @ dagger(evolution)
    reduced = partial_trace(joint, (N, M), Factor.FIRST)
    residual = max_abs(reduced - decohered)
    if residual > tol:
        raise InternalInconsistencyError("decohered state: diagonal vs composite partial trace", residual, tol)

    return DecoherenceResult(
        rho_isolated=DensityMatrix(isolated),
        rho_decohered=DensityMatrix(decohered),
        coherence_norm_drop=drop,
        partial_trace_residual=residual,
    )
