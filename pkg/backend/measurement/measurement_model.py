"""
Modelos do processo de medição sujeito-aparelho-ambiente.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from core.exceptions import DimensionError, InvalidIndexError, NonInjectiveMapError, ValidationError
from core.linalg import as_square, max_abs, require_self_adjoint, require_unitary, validate_pvm
from core.types import STRUCTURAL_TOL
from correspondence.correspondence_model import DensityMatrix, StateVector
from dynamics.family_model import UnitaryFamily, identity_family
from stochastic.stochastic_model import ProbabilityVector

# Resíduo máximo de Σ ã_α P̃_α contra a matriz original
RECONSTRUCTION_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Observable:
    """
    Observável autoadjunto com decomposição espectral Σ_α ã_α P̃_α.

    ``bases[α]`` guarda uma base ortonormal (colunas) do autoespaço α;
    para autoespaços de posto 1 é o autovetor ẽ_α.
    """
    matrix: np.ndarray
    eigenvalues: Tuple[float, ...]
    projectors: Tuple[np.ndarray, ...]
    bases: Tuple[np.ndarray, ...]

    def __post_init__(self):
        matrix = require_self_adjoint(as_square(self.matrix, "Observable"), "Observable")
        n = matrix.shape[0]
        if not (len(self.eigenvalues) == len(self.projectors) == len(self.bases)):
            raise DimensionError("Observable spectrum", len(self.eigenvalues), (len(self.projectors), len(self.bases)))
        if any(b <= a for a, b in zip(self.eigenvalues, self.eigenvalues[1:])):
            raise ValidationError("observable eigenvalues must increase strictly")
        validate_pvm(self.projectors, n)
        rebuilt = sum(a * P for a, P in zip(self.eigenvalues, self.projectors))
        residual = max_abs(rebuilt - matrix)
        if residual > RECONSTRUCTION_TOL:
            raise ValidationError(f"spectral reconstruction residual {residual:.3e} exceeds {RECONSTRUCTION_TOL}")
        for arr in (matrix, *self.projectors, *self.bases):
            arr.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "eigenvalues", tuple(float(a) for a in self.eigenvalues))

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def outcome_count(self) -> int:
        return len(self.eigenvalues)

    def rank(self, alpha: int) -> int:
        return self.bases[alpha].shape[1]

    def eigenvector(self, alpha: int) -> Optional[np.ndarray]:
        """ẽ_α quando o autoespaço tem posto 1; None se degenerado."""
        basis = self.bases[alpha]
        return basis[:, 0].copy() if basis.shape[1] == 1 else None

    def check_outcome(self, alpha: int) -> None:
        if not 0 <= alpha < self.outcome_count:
            raise InvalidIndexError("outcome", alpha, (0, self.outcome_count))

    def __repr__(self) -> str:
        values = ", ".join(f"{a:.6g}" for a in self.eigenvalues)
        return f"Observable(n={self.n}, eigenvalues=[{values}])"


def _injective(name: str, mapping: Tuple[int, ...], size: int, outcomes: int) -> Tuple[int, ...]:
    mapping = tuple(int(v) for v in mapping)
    if len(mapping) != outcomes:
        raise DimensionError(name, outcomes, len(mapping))
    for v in mapping:
        if not 0 <= v < size:
            raise InvalidIndexError(name, v, (0, size))
    if len(set(mapping)) != len(mapping):
        raise NonInjectiveMapError(name, mapping)
    return mapping


@dataclass(eq=False)
class MeasurementScenario:
    """
    Sujeito (N) ⊗ aparelho (D) ⊗ ambiente (E) com interação de medição em t′.

    O índice triplo (i, d, e) vale (i·D + d)·E + e. Depois de t′ a evolução
    fatora em U^S ⊗ U^D ⊗ U^E; aparelho e ambiente ficam parados por padrão.
    """
    observable: Observable
    device_dim: int
    environment_dim: int
    d_of: Tuple[int, ...]
    e_of: Tuple[int, ...]
    pre_unitary: Optional[np.ndarray] = None
    initial_configuration: int = 0
    t_prime: float = 0.0
    post_subject: Optional[UnitaryFamily] = None
    post_device: Optional[UnitaryFamily] = None
    post_environment: Optional[UnitaryFamily] = None
    tol: float = field(default=STRUCTURAL_TOL, repr=False)

    def __post_init__(self):
        n = self.observable.n
        outcomes = self.observable.outcome_count
        if self.device_dim < outcomes:
            raise DimensionError("device_dim", f">= {outcomes}", self.device_dim)
        if self.environment_dim < outcomes:
            raise DimensionError("environment_dim", f">= {outcomes}", self.environment_dim)
        self.d_of = _injective("d_of", self.d_of, self.device_dim, outcomes)
        self.e_of = _injective("e_of", self.e_of, self.environment_dim, outcomes)

        if self.pre_unitary is None:
            self.pre_unitary = np.eye(n, dtype=complex)
        self.pre_unitary = require_unitary(as_square(self.pre_unitary, "pre_unitary"), "pre_unitary", self.tol)
        if self.pre_unitary.shape[0] != n:
            raise DimensionError("pre_unitary", (n, n), self.pre_unitary.shape)
        if not 0 <= self.initial_configuration < n:
            raise InvalidIndexError("initial_configuration", self.initial_configuration, (0, n))

        self.post_subject = self.post_subject or identity_family(n)
        self.post_device = self.post_device or identity_family(self.device_dim)
        self.post_environment = self.post_environment or identity_family(self.environment_dim)
        for name, family, dim in (
            ("post_subject", self.post_subject, n),
            ("post_device", self.post_device, self.device_dim),
            ("post_environment", self.post_environment, self.environment_dim),
        ):
            if family.n != dim:
                raise DimensionError(name, dim, family.n)

    @property
    def subject_dim(self) -> int:
        return self.observable.n

    @property
    def dims(self) -> Tuple[int, int, int]:
        return (self.subject_dim, self.device_dim, self.environment_dim)

    def subject_state(self) -> np.ndarray:
        """Ψ^S(t′) = pre_unitary · e_j."""
        return self.pre_unitary[:, self.initial_configuration].copy()


@dataclass(frozen=True, eq=False)
class MeasurementResult:
    """Saídas de run_measurement no instante t"""
    t: float
    device_probs: ProbabilityVector
    subject_probs: np.ndarray
    hybrid_matrix: np.ndarray
    conditional_densities: List[DensityMatrix]
    mixed_density: DensityMatrix
    joint_probs: np.ndarray
    hybrid_residual: float
    subject_route_residual: Optional[float]


@dataclass(frozen=True, eq=False)
class CollapsedState:
    """Estado condicional ao resultado α′: vetor (posto 1) e densidade"""
    outcome: int
    eigenvalue: float
    state: Optional[StateVector]
    density: DensityMatrix
