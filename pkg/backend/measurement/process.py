"""
Processo de medição completo: regra de Born do aparelho, matriz híbrida e
estados condicionais (colapsados).

Em t′ o composto vale

    Ψ^{SDE}(t′) = Σ_α (P̃_α Ψ^S) ⊗ e_{d(α)} ⊗ e_{e(α)},

e depois evolui com U^S ⊗ U^D ⊗ U^E(t − t′).
"""

from typing import List

import numpy as np

from core.exceptions import InternalInconsistencyError, PreconditionError
from core.linalg import configuration_projector, dagger, max_abs, tensor_all
from core.types import PROBABILITY_TOL, STRUCTURAL_TOL
from correspondence.correspondence_model import DensityMatrix, StateVector
from dynamics.generators import evaluate
from infrastructure.logging import get_logger, log_duration
from measurement.measurement_model import CollapsedState, MeasurementResult, MeasurementScenario
from stochastic.stochastic_model import ProbabilityVector

logger = get_logger(__name__)


def _check_time(s: MeasurementScenario, t: float) -> float:
    if t < s.t_prime:
        raise PreconditionError("measurement", f"t must not precede t'={s.t_prime}, got {t}")
    return t - s.t_prime


def subject_relative(s: MeasurementScenario, t: float) -> np.ndarray:
    """U^S(t←t′)."""
    return evaluate(s.post_subject, _check_time(s, t))


def composite_state_at_event(s: MeasurementScenario) -> np.ndarray:
    """Ψ^{SDE}(t′) no índice triplo (i·D + d)·E + e."""
    N, D, E = s.dims
    psi = s.subject_state()
    state = np.zeros((N, D, E), dtype=complex)
    for alpha, P in enumerate(s.observable.projectors):
        state[:, s.d_of[alpha], s.e_of[alpha]] += P @ psi
    return state.reshape(-1)


def composite_joint(s: MeasurementScenario, t: float) -> np.ndarray:
    """|Ψ^{SDE}_{ide}(t)|² como tensor N×D×E."""
    elapsed = _check_time(s, t)
    evolution = tensor_all(
        [
            evaluate(s.post_subject, elapsed),
            evaluate(s.post_device, elapsed),
            evaluate(s.post_environment, elapsed),
        ]
    )
    state = evolution @ composite_state_at_event(s)
    return (np.abs(state) ** 2).reshape(s.dims)


def device_born_rule(s: MeasurementScenario, tol: float = PROBABILITY_TOL) -> ProbabilityVector:
    """
    p^D_{d(α)}(t′) = ‖P̃_α Ψ^S(t′)‖², conferida contra o marginal do composto.

    Para autoespaços de posto 1 coincide com |ẽ_α† Ψ^S(t′)|².
    """
    psi = s.subject_state()
    direct = np.array([float(np.real(np.vdot(psi, P @ psi))) for P in s.observable.projectors])
    device_marginal = composite_joint(s, s.t_prime).sum(axis=(0, 2))
    via_composite = np.array([device_marginal[d] for d in s.d_of])
    residual = max_abs(direct - via_composite)
    if residual > tol:
        raise InternalInconsistencyError("device Born rule vs composite marginal", residual, tol)
    return ProbabilityVector(np.clip(direct, 0.0, None), tol=tol)


def hybrid_matrix(s: MeasurementScenario, t: float, tol: float = PROBABILITY_TOL):
    """
    Γ^{SD}_{i,α}(t←t′) = tr(U P̃_α U† P_i) / posto(α), por duas rotas:
    traço com os projetores e soma sobre a base do autoespaço.

    Retorna (matriz, resíduo entre rotas).
    """
    U = subject_relative(s, t)
    N = s.subject_dim
    outcomes = s.observable.outcome_count
    by_trace = np.empty((N, outcomes))
    by_basis = np.empty((N, outcomes))
    for alpha in range(outcomes):
        rank = s.observable.rank(alpha)
        evolved = U @ s.observable.projectors[alpha] @ dagger(U)
        for i in range(N):
            by_trace[i, alpha] = np.real(np.trace(evolved @ configuration_projector(N, i))) / rank
        by_basis[:, alpha] = (np.abs(U @ s.observable.bases[alpha]) ** 2).sum(axis=1) / rank

    residual = max_abs(by_trace - by_basis)
    if residual > tol:
        raise InternalInconsistencyError("hybrid matrix: trace form vs eigenbasis form", residual, tol)
    column_error = float(np.max(np.abs(by_trace.sum(axis=0) - 1.0)))
    if column_error > tol:
        raise InternalInconsistencyError("hybrid matrix column sums", column_error, tol)
    return by_trace, residual


def conditional_density(s: MeasurementScenario, alpha: int, t: float) -> DensityMatrix:
    """ρ^{S|α′,t′}(t) = U P̃_α U† / posto(α)."""
    s.observable.check_outcome(alpha)
    U = subject_relative(s, t)
    rho = U @ s.observable.projectors[alpha] @ dagger(U) / s.observable.rank(alpha)
    return DensityMatrix(0.5 * (rho + dagger(rho)))


@log_duration("run_measurement")
def run_measurement(s: MeasurementScenario, t: float, tol: float = STRUCTURAL_TOL) -> MeasurementResult:
    """
    Executa o processo de medição e confere as rotas independentes.

    Com espectro não degenerado, p^S = Γ^{SD} p^D é comparada ao marginal
    do composto; com autoespaços degenerados a matriz híbrida usa P̃/posto
    e p^S vem apenas do composto.

    Raises:
        DimensionError: cenário inconsistente
        PreconditionError: t anterior a t′
        InternalInconsistencyError: rotas discordam
    """
    device = device_born_rule(s)
    hybrid, hybrid_residual = hybrid_matrix(s, t)
    joint = composite_joint(s, t)
    brute = joint.sum(axis=(1, 2))

    nondegenerate = all(s.observable.rank(a) == 1 for a in range(s.observable.outcome_count))
    subject_route_residual = None
    if nondegenerate:
        subject_route_residual = max_abs(hybrid @ device.entries - brute)
        if subject_route_residual > tol:
            raise InternalInconsistencyError("subject probabilities: hybrid route vs composite", subject_route_residual, tol)
    else:
        logger.info("Degenerate observable: hybrid route to subject probabilities skipped")

    conditionals: List[DensityMatrix] = [
        conditional_density(s, alpha, t) for alpha in range(s.observable.outcome_count)
    ]
    mixture = sum(rho.rho * p for rho, p in zip(conditionals, device.entries))

    # ρ^S(t) = U [Σ p^D P̃/posto] U†
    U = subject_relative(s, t)
    weighted = sum(
        p * P / s.observable.rank(a)
        for a, (p, P) in enumerate(zip(device.entries, s.observable.projectors))
    )
    direct = U @ weighted @ dagger(U)
    mixture_residual = max_abs(mixture - direct)
    if mixture_residual > PROBABILITY_TOL:
        raise InternalInconsistencyError("mixed density: conditional mixture vs direct form", mixture_residual, PROBABILITY_TOL)

    logger.debug("Measurement run", extra={"t": t, "outcomes": s.observable.outcome_count})
    return MeasurementResult(
        t=t,
        device_probs=device,
        subject_probs=brute,
        hybrid_matrix=hybrid,
        conditional_densities=conditionals,
        mixed_density=DensityMatrix(0.5 * (mixture + dagger(mixture))),
        joint_probs=joint,
        hybrid_residual=hybrid_residual,
        subject_route_residual=subject_route_residual,
    )


def collapse(s: MeasurementScenario, alpha: int, t: float, tol: float = PROBABILITY_TOL) -> CollapsedState:
    """
    Estado colapsado no resultado α′ e evoluído até t.

    O vetor de estado só existe para autoespaços de posto 1.

    Raises:
        InvalidIndexError: resultado inexistente
        InternalInconsistencyError: densidade condicional não reproduz a coluna híbrida
    """
    s.observable.check_outcome(alpha)
    density = conditional_density(s, alpha, t)
    hybrid, _ = hybrid_matrix(s, t)
    residual = max_abs(density.probabilities() - hybrid[:, alpha])
    if residual > tol:
        raise InternalInconsistencyError("collapsed density vs hybrid column", residual, tol)

    state = None
    eigenvector = s.observable.eigenvector(alpha)
    if eigenvector is not None:
        state = StateVector(subject_relative(s, t) @ eigenvector)

    return CollapsedState(
        outcome=alpha,
        eigenvalue=s.observable.eigenvalues[alpha],
        state=state,
        density=density,
    )


def repeat_probability(s: MeasurementScenario, alpha: int) -> float:
    """Probabilidade de repetir α′ medindo logo após o colapso (t = t′)."""
    density = conditional_density(s, alpha, s.t_prime)
    return float(np.real(np.trace(s.observable.projectors[alpha] @ density.rho)))
