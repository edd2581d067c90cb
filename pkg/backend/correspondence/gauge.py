"""
Transformações de gauge: Schur-Hadamard (fases por entrada) e unitária
dependente do tempo.
"""

from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence, Tuple

import numpy as np

from core.exceptions import DimensionError
from core.linalg import as_square, configuration_pvm, dagger, require_unitary
from core.types import STRUCTURAL_TOL
from correspondence.correspondence_model import DensityMatrix, EvolutionOperator, PhaseMatrix, StateVector
from correspondence.states import density_matrix, state_vector
from stochastic.stochastic_model import ProbabilityVector


def gauge_schur_hadamard(theta: EvolutionOperator, phases: PhaseMatrix) -> EvolutionOperator:
    """Θ ↦ Θ ⊙ exp(iθ_ij); preserva cada |Θ_ij|²."""
    if phases.thetas.shape != theta.theta.shape:
        raise DimensionError("gauge_schur_hadamard", theta.theta.shape, phases.thetas.shape)
    return EvolutionOperator(theta.theta * phases.factors(), tol=theta.tol)


@dataclass(frozen=True, eq=False)
class GaugeFrame:
    """
    Objetos de um sistema num referencial de gauge unitário.

    ``projectors_t`` e ``projectors_0`` são os projetores de configuração
    transformados nos dois instantes; no referencial original são os P_i.
    """
    theta: np.ndarray
    rho: DensityMatrix
    psi: Optional[StateVector] = None
    observables: Tuple[np.ndarray, ...] = ()
    projectors_t: Tuple[np.ndarray, ...] = field(default=())
    projectors_0: Tuple[np.ndarray, ...] = field(default=())

    def __post_init__(self):
        theta = self.theta.theta if isinstance(self.theta, EvolutionOperator) else self.theta
        object.__setattr__(self, "theta", as_square(theta, "theta"))
        n = self.theta.shape[0]
        if self.rho.n != n or (self.psi is not None and self.psi.n != n):
            raise DimensionError("GaugeFrame", n, (self.rho.n, self.psi.n if self.psi else None))
        if not self.projectors_t:
            object.__setattr__(self, "projectors_t", configuration_pvm(n).projectors)
        if not self.projectors_0:
            object.__setattr__(self, "projectors_0", configuration_pvm(n).projectors)
        object.__setattr__(self, "observables", tuple(np.asarray(A, dtype=complex) for A in self.observables))

    def transition_matrix(self) -> np.ndarray:
        """Γ_ij = tr(Θ† P_i(t) Θ P_j(0)) com os projetores do referencial."""
        n = self.theta.shape[0]
        theta = self.theta
        gamma = np.empty((n, n))
        for i, P_i in enumerate(self.projectors_t):
            left = dagger(theta) @ P_i @ theta
            for j, P_j in enumerate(self.projectors_0):
                gamma[i, j] = np.real(np.trace(left @ P_j))
        return gamma

    def probabilities(self) -> np.ndarray:
        """p_i(t) = tr(P_i(t) ρ)."""
        return np.array([np.real(np.trace(P @ self.rho.rho)) for P in self.projectors_t])

    def expectations(self) -> List[float]:
        return [float(np.real(np.trace(A @ self.rho.rho))) for A in self.observables]


def gauge_unitary(
    frame: GaugeFrame,
    V_t,
    V_0,
    tol: float = STRUCTURAL_TOL,
) -> GaugeFrame:
    """
    ρ ↦ VρV†, Ψ ↦ VΨ, A ↦ VAV†, Θ ↦ V(t) Θ V†(0), projetores incluídos.

    Raises:
        NotUnitaryError: V(t) ou V(0) não unitária
    """
    V_t = require_unitary(V_t, "V(t)", tol)
    V_0 = require_unitary(V_0, "V(0)", tol)
    n = frame.theta.shape[0]
    if V_t.shape[0] != n or V_0.shape[0] != n:
        raise DimensionError("gauge_unitary", n, (V_t.shape[0], V_0.shape[0]))

    def conjugate(M: np.ndarray, V: np.ndarray) -> np.ndarray:
        return V @ M @ dagger(V)

    rho = conjugate(frame.rho.rho, V_t)
    theta = V_t @ frame.theta @ dagger(V_0)
    return replace(
        frame,
        theta=theta,
        rho=DensityMatrix(0.5 * (rho + dagger(rho)), tol=max(frame.rho.tol, tol)),
        psi=StateVector(V_t @ frame.psi.psi, tol=max(frame.psi.tol, tol)) if frame.psi is not None else None,
        observables=tuple(conjugate(A, V_t) for A in frame.observables),
        projectors_t=tuple(conjugate(P, V_t) for P in frame.projectors_t),
        projectors_0=tuple(conjugate(P, V_0) for P in frame.projectors_0),
    )


def build_frame(
    theta: EvolutionOperator,
    p0: ProbabilityVector,
    observables: Sequence = (),
    j: Optional[int] = None,
) -> GaugeFrame:
    """Referencial original: ρ(t) do dicionário e, se j for dado, Ψ(t) = Θ e_j."""
    return GaugeFrame(
        theta=theta.theta,
        rho=density_matrix(theta, p0),
        psi=state_vector(theta, j) if j is not None else None,
        observables=tuple(observables),
    )
