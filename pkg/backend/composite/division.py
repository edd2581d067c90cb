"""
Eventos de divisão sujeito-ambiente e cadeias de Markov emergentes.

Em t′ o sujeito (N configurações) correlaciona-se com o ambiente
(M ≥ N configurações) pela unitária

    W = Σ_i P_i^S ⊗ R_{e(i)}^E,

onde R_e é a transposição que troca as configurações 0 e e do ambiente.
A evolução depois de t′ é fatorada: U(t←t′) = U^S(t−t′) ⊗ U^E(t−t′).
"""

from typing import List, Optional

import numpy as np

from composite.composite_model import CompositeSystem, CorrelationMap
from core.exceptions import DimensionError, EvaluationError, InternalInconsistencyError, PreconditionError
from core.linalg import as_square, configuration_projector, max_abs, require_unitary
from core.types import PROBABILITY_TOL, STRUCTURAL_TOL
from dynamics.family_model import FamilyKind, UnitaryFamily
from dynamics.generators import evaluate
from infrastructure.logging import get_logger, log_duration
from stochastic.stochastic_model import StochasticMatrix

logger = get_logger(__name__)

# Limite do oráculo de força bruta (N·M^n entradas por vetor de estado)
BRUTE_FORCE_MAX_DIM = 4096


def environment_swap(environment_dim: int, e: int) -> np.ndarray:
    """Permutação unitária que leva a configuração 0 do ambiente em e."""
    R = np.eye(environment_dim, dtype=complex)
    if e != 0:
        R[[0, e]] = R[[e, 0]]
    return R


def correlation_unitary(corr: CorrelationMap) -> np.ndarray:
    """W = Σ_i P_i ⊗ R_{e(i)} (bloco-diagonal, logo unitária)."""
    N, M = corr.subject_dim, corr.environment_dim
    W = np.zeros((N * M, N * M), dtype=complex)
    for i, e in enumerate(corr.e_of):
        W += np.kron(configuration_projector(N, i), environment_swap(M, e))
    return W


class DivisionFamily(UnitaryFamily):
    """
    Família composta com evento de divisão em t′ > 0.

    Definida em t = 0 (identidade) e em t ≥ t′; o intervalo (0, t′) não
    é modelado.
    """

    kind = FamilyKind.DIVISION_EVENT

    def __init__(
        self,
        U_S_pre,
        corr: CorrelationMap,
        U_S_post: UnitaryFamily,
        U_E_post: UnitaryFamily,
        t_prime: float = 1.0,
    ):
        U_S_pre = require_unitary(as_square(U_S_pre, "U_S_pre"), "U_S_pre")
        N, M = corr.subject_dim, corr.environment_dim
        if U_S_pre.shape[0] != N:
            raise DimensionError("U_S_pre", (N, N), U_S_pre.shape)
        if U_S_post.n != N:
            raise DimensionError("U_S_post", N, U_S_post.n)
        if U_E_post.n != M:
            raise DimensionError("U_E_post", M, U_E_post.n)
        if U_S_post.hbar != U_E_post.hbar:
            raise PreconditionError("division family", "post-event factors must share hbar")
        if t_prime <= 0:
            raise PreconditionError("division family", f"t_prime must be positive, got {t_prime}")

        super().__init__(N * M, U_S_post.hbar)
        self.U_S_pre = U_S_pre
        self.corr = corr
        self.U_S_post = U_S_post
        self.U_E_post = U_E_post
        self.t_prime = float(t_prime)
        self.event_unitary = correlation_unitary(corr) @ np.kron(U_S_pre, np.eye(M))

    @property
    def domain(self):
        return (0.0, np.inf)

    def check_domain(self, t: float) -> None:
        super().check_domain(t)
        if 0.0 < t < self.t_prime:
            raise EvaluationError(self.kind.value, t, (self.t_prime, np.inf))

    def relative(self, t: float) -> np.ndarray:
        """U(t←t′) = U^S(t−t′) ⊗ U^E(t−t′)."""
        elapsed = t - self.t_prime
        return np.kron(self.U_S_post.unitary(elapsed), self.U_E_post.unitary(elapsed))

    def unitary(self, t: float) -> np.ndarray:
        if t == 0.0:
            return np.eye(self.n, dtype=complex)
        return self.relative(t) @ self.event_unitary


def build_division_scenario(
    U_S_pre,
    corr: CorrelationMap,
    U_S_post: UnitaryFamily,
    U_E_post: UnitaryFamily,
    t_prime: float = 1.0,
    tol: float = PROBABILITY_TOL,
) -> CompositeSystem:
    """
    Monta o sistema sujeito ⊗ ambiente com evento de divisão em t′.

    Verifica que, partindo de (j, 0), Ψ^{SE}(t′) tem a forma correlacionada
    Ψ_{i,e} = Ψ^S_i δ_{e,e(i)}.

    Raises:
        DimensionError: dimensões inconsistentes
        NonInjectiveMapError: mapa de correlação não injetivo
        InternalInconsistencyError: forma correlacionada violada
    """
    family = DivisionFamily(U_S_pre, corr, U_S_post, U_E_post, t_prime)
    system = CompositeSystem(
        factors=[("subject", corr.subject_dim), ("environment", corr.environment_dim)],
        family=family,
        event_times=(family.t_prime,),
        correlation=corr,
    )

    U_event = evaluate(family, family.t_prime)
    N, M = corr.subject_dim, corr.environment_dim
    for j in range(N):
        psi = U_event[:, system.pair_index(j, 0)]
        expected = np.zeros(N * M, dtype=complex)
        for i, e in enumerate(corr.e_of):
            expected[system.pair_index(i, e)] = family.U_S_pre[i, j]
        residual = max_abs(psi - expected)
        if residual > tol:
            raise InternalInconsistencyError(f"correlated form at t' for initial ({j}, 0)", residual, tol)

    logger.info("Division scenario built", extra={"subject_dim": N, "environment_dim": M, "t_prime": family.t_prime})
    return system


def joint_probabilities(system: CompositeSystem, t: float, j: int) -> np.ndarray:
    """p_{i,e}(t) partindo da configuração (j, 0), como matriz N×M."""
    U = evaluate(system.family, t)
    column = np.abs(U[:, system.pair_index(j, 0)]) ** 2
    return column.reshape(system.dims)


def subject_marginal_dynamics(system: CompositeSystem, t: float, tol: float = STRUCTURAL_TOL) -> StochasticMatrix:
    """
    Γ^S(t) = Γ^S(t←t′) Γ^S(t′), conferida contra a marginalização direta
    das probabilidades conjuntas do composto.

    Raises:
        PreconditionError: sistema sem evento de divisão ou t ≤ t′
        InternalInconsistencyError: as duas rotas discordam além de tol
    """
    family = system.family
    if not isinstance(family, DivisionFamily):
        raise PreconditionError("subject_marginal_dynamics", "system was not built by build_division_scenario")
    if t <= family.t_prime:
        raise PreconditionError("subject_marginal_dynamics", f"t must exceed t'={family.t_prime}, got {t}")

    gamma_event = np.abs(family.U_S_pre) ** 2
    gamma_after = np.abs(family.U_S_post.unitary(t - family.t_prime)) ** 2
    product = gamma_after @ gamma_event

    N = family.corr.subject_dim
    brute = np.column_stack([joint_probabilities(system, t, j).sum(axis=1) for j in range(N)])
    residual = max_abs(product - brute)
    if residual > tol:
        raise InternalInconsistencyError("subject marginal: product form vs composite marginalization", residual, tol)
    return StochasticMatrix(product)


# =============================================================================
# CADEIA DE MARKOV EMERGENTE
# =============================================================================

def _apply_step(state: np.ndarray, U_S: np.ndarray, corr: CorrelationMap, k: int) -> np.ndarray:
    """Evolui o sujeito (eixo 0) e correlaciona-o com o ambiente novo k."""
    state = np.tensordot(U_S, state, axes=([1], [0]))
    result = np.empty_like(state)
    for i, e in enumerate(corr.e_of):
        R = environment_swap(corr.environment_dim, e)
        moved = np.tensordot(R, state[i], axes=([1], [k]))
        result[i] = np.moveaxis(moved, 0, k)
    return result


def brute_force_chain(U_S, corr: CorrelationMap, n_steps: int) -> List[np.ndarray]:
    """
    Marginais do sujeito após k passos, cada passo com um ambiente novo.

    O espaço tem dimensão N·M^n; cada coluna j evolui o estado (j, 0, ..., 0).
    """
    N, M = corr.subject_dim, corr.environment_dim
    shape = (N,) + (M,) * n_steps
    columns: List[List[np.ndarray]] = [[] for _ in range(n_steps)]
    for j in range(N):
        state = np.zeros(shape, dtype=complex)
        state[(j,) + (0,) * n_steps] = 1.0
        for k in range(n_steps):
            state = _apply_step(state, U_S, corr, k)
            probabilities = np.abs(state) ** 2
            columns[k].append(probabilities.reshape(N, -1).sum(axis=1))
    return [np.column_stack(cols) for cols in columns]


@log_duration("markov_chain_emergence")
def markov_chain_emergence(
    U_S_step,
    corr: CorrelationMap,
    n_steps: int,
    tol: float = STRUCTURAL_TOL,
    brute_force_max_dim: Optional[int] = BRUTE_FORCE_MAX_DIM,
) -> List[StochasticMatrix]:
    """
    Γ^S(kδt) = (Γ^S)^k com Γ^S_ij = |U^S_ij(δt)|², k = 1..n_steps.

    Quando N·M^n cabe em ``brute_force_max_dim`` a cadeia é conferida
    contra a composição explícita com ambientes novos.

    Raises:
        PreconditionError: n_steps < 1
        InternalInconsistencyError: potência e força bruta discordam
    """
    if n_steps < 1:
        raise PreconditionError("markov_chain_emergence", f"n_steps must be >= 1, got {n_steps}")
    U_S = require_unitary(as_square(U_S_step, "U_S_step"), "U_S_step")
    if U_S.shape[0] != corr.subject_dim:
        raise DimensionError("U_S_step", (corr.subject_dim, corr.subject_dim), U_S.shape)

    step = np.abs(U_S) ** 2
    powers = [step]
    for _ in range(1, n_steps):
        powers.append(step @ powers[-1])

    full_dim = corr.subject_dim * corr.environment_dim ** n_steps
    if brute_force_max_dim is not None and full_dim <= brute_force_max_dim:
        for k, brute in enumerate(brute_force_chain(U_S, corr, n_steps), start=1):
            residual = max_abs(powers[k - 1] - brute)
            if residual > tol:
                raise InternalInconsistencyError(f"Markov chain step {k}: power vs fresh-environment composite", residual, tol)
    else:
        logger.info("Brute-force chain check skipped", extra={"dimension": full_dim, "limit": brute_force_max_dim})

    return [StochasticMatrix(np.clip(P, 0.0, None)) for P in powers]
