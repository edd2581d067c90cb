"""
Dicionário dilatado, transformações de gauge por blocos e a representação
real (D = 2).
"""

import numpy as np

from core.exceptions import DimensionError, InvalidIndexError
from core.linalg import PVM, as_square, configuration_projector, configuration_pvm, dagger, require_unitary
from core.types import PROBABILITY_TOL, STRUCTURAL_TOL
from correspondence.correspondence_model import EvolutionOperator
from dilation.dilation_model import DilatedSystem
from stochastic.stochastic_model import StochasticMatrix

# i ↦ [[0, −1], [1, 0]]
IMAGINARY_UNIT_BLOCK = np.array([[0.0, -1.0], [1.0, 0.0]])


def dilated_dictionary(theta_tilde, internal_pvm: PVM, gamma: int, tol: float = PROBABILITY_TOL) -> StochasticMatrix:
    """
    Γ_ij = tr(Θ̃† [P_i ⊗ 𝟙] Θ̃ [P_j ⊗ P_γ]) / tr(P_γ).

    Raises:
        DimensionError: lado de Θ̃ diferente de N·D
        StochasticityError: Θ̃ viola a condição de soma generalizada
    """
    theta = as_square(theta_tilde, "theta_tilde")
    D = internal_pvm.dim
    if theta.shape[0] % D:
        raise DimensionError("dilated_dictionary", f"side multiple of D={D}", theta.shape[0])
    if not 0 <= gamma < len(internal_pvm):
        raise InvalidIndexError("gamma", gamma, (0, len(internal_pvm)))
    N = theta.shape[0] // D
    P_gamma = internal_pvm.projectors[gamma]
    rank = float(np.real(np.trace(P_gamma)))
    identity = np.eye(D)

    gamma_matrix = np.empty((N, N))
    for i in range(N):
        left = dagger(theta) @ np.kron(configuration_projector(N, i), identity) @ theta
        for j in range(N):
            gamma_matrix[i, j] = np.real(np.trace(left @ np.kron(configuration_projector(N, j), P_gamma))) / rank
    return StochasticMatrix(gamma_matrix, tol=tol)


def to_blocks(theta_tilde, n: int, d: int) -> np.ndarray:
    """Θ̃ (lado n·d) → array (n, n, d, d) de blocos."""
    theta = as_square(theta_tilde, "theta_tilde")
    if theta.shape[0] != n * d:
        raise DimensionError("to_blocks", (n * d, n * d), theta.shape)
    return theta.reshape(n, d, n, d).transpose(0, 2, 1, 3).copy()


def from_blocks(blocks) -> np.ndarray:
    arr = np.asarray(blocks)
    if arr.ndim != 4 or arr.shape[0] != arr.shape[1] or arr.shape[2] != arr.shape[3]:
        raise DimensionError("from_blocks", "(N, N, D, D)", arr.shape)
    n, _, d, _ = arr.shape
    return arr.transpose(0, 2, 1, 3).reshape(n * d, n * d)


def block_gauge(theta_blocks, v_blocks, tol: float = STRUCTURAL_TOL) -> np.ndarray:
    """
    [Θ_ij]^I ↦ V_(ij) [Θ_ij]^I, bloco a bloco.

    Raises:
        NotUnitaryError: algum V_(ij) não unitário
    """
    blocks = np.asarray(theta_blocks, dtype=complex)
    gauges = np.asarray(v_blocks, dtype=complex)
    if blocks.shape != gauges.shape:
        raise DimensionError("block_gauge", blocks.shape, gauges.shape)
    n = blocks.shape[0]
    transformed = np.empty_like(blocks)
    for i in range(n):
        for j in range(n):
            V = require_unitary(gauges[i, j], f"V[{i},{j}]", tol)
            transformed[i, j] = V @ blocks[i, j]
    return from_blocks(transformed)


def realify(theta) -> DilatedSystem:
    """Substitui cada a + ib por a·𝟙 + b·[[0, −1], [1, 0]] (D = 2, γ = 0)."""
    if not isinstance(theta, EvolutionOperator):
        theta = EvolutionOperator(theta)
    entries = theta.theta
    real_form = np.kron(entries.real, np.eye(2)) + np.kron(entries.imag, IMAGINARY_UNIT_BLOCK)
    return DilatedSystem(
        base_dim=theta.n,
        internal_dim=2,
        gamma=0,
        internal_pvm=configuration_pvm(2),
        evolution=real_form,
    )


def tensor_identity(theta, d: int) -> np.ndarray:
    """Θ ⊗ 𝟙^I."""
    arr = getattr(theta, "theta", theta)
    return np.kron(as_square(arr, "theta"), np.eye(d))
