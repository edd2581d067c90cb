"""
Objetos do espaço de Hilbert associados a um sistema estocástico.
"""

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from core.exceptions import DimensionError, KrausIdentityError, NonFiniteError, StochasticityError, ValidationError
from core.linalg import as_square, as_vector, hermiticity_residual, max_abs
from core.types import EIGENVALUE_FLOOR, PROBABILITY_TOL


@dataclass(frozen=True, eq=False)
class EvolutionOperator:
    """Θ(t) com colunas de norma unitária: Γ_ij = |Θ_ij|²"""
    theta: np.ndarray
    tol: float = field(default=PROBABILITY_TOL, repr=False)

    def __post_init__(self):
        theta = as_square(self.theta, "EvolutionOperator")
        norms = np.sum(np.abs(theta) ** 2, axis=0)
        bad = np.flatnonzero(np.abs(norms - 1.0) > self.tol)
        if bad.size:
            j = int(bad[0])
            raise StochasticityError(j, float(norms[j]), 0.0, self.tol)
        theta.setflags(write=False)
        object.__setattr__(self, "theta", theta)

    @property
    def n(self) -> int:
        return self.theta.shape[0]

    def __repr__(self) -> str:
        return f"EvolutionOperator(n={self.n})"


@dataclass(frozen=True, eq=False)
class KrausSet:
    """Operadores de Kraus K_β com Σ K_β† K_β = 𝟙"""
    operators: Tuple[np.ndarray, ...]
    tol: float = field(default=PROBABILITY_TOL, repr=False)

    def __post_init__(self):
        if len(self.operators) == 0:
            raise ValidationError("KrausSet needs at least one operator")
        ops = tuple(as_square(K, f"K[{b}]") for b, K in enumerate(self.operators))
        n = ops[0].shape[0]
        for b, K in enumerate(ops):
            if K.shape != (n, n):
                raise DimensionError(f"K[{b}]", (n, n), K.shape)
            K.setflags(write=False)
        object.__setattr__(self, "operators", ops)
        residual = self.identity_residual()
        if residual > self.tol:
            raise KrausIdentityError(residual, self.tol)

    @property
    def n(self) -> int:
        return self.operators[0].shape[0]

    def identity_residual(self) -> float:
        total = sum(np.conj(K).T @ K for K in self.operators)
        return max_abs(total - np.eye(self.n))

    def __len__(self) -> int:
        return len(self.operators)

    def __repr__(self) -> str:
        return f"KrausSet(n={self.n}, operators={len(self.operators)})"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """ρ autoadjunta, traço 1, semidefinida positiva"""
    rho: np.ndarray
    tol: float = field(default=PROBABILITY_TOL, repr=False)

    def __post_init__(self):
        rho = as_square(self.rho, "DensityMatrix")
        residual = hermiticity_residual(rho)
        if residual > self.tol:
            raise ValidationError(f"density matrix is not self-adjoint (residual {residual:.3e})")
        trace = np.trace(rho)
        if abs(trace - 1.0) > self.tol:
            raise ValidationError(f"density matrix trace is {trace:.17g}, expected 1")
        smallest = float(np.linalg.eigvalsh(0.5 * (rho + np.conj(rho).T)).min())
        if smallest < EIGENVALUE_FLOOR:
            raise ValidationError(f"density matrix has negative eigenvalue {smallest:.3e}")
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)

    @property
    def n(self) -> int:
        return self.rho.shape[0]

    def probabilities(self) -> np.ndarray:
        """p_i = tr(P_i ρ) = ρ_ii."""
        return np.real(np.diag(self.rho)).copy()

    def is_pure(self, tol: float = 1e-10) -> bool:
        return abs(np.real(np.trace(self.rho @ self.rho)) - 1.0) <= tol

    def __repr__(self) -> str:
        return f"DensityMatrix(n={self.n})"


@dataclass(frozen=True, eq=False)
class StateVector:
    """Ψ com Ψ†Ψ = 1"""
    psi: np.ndarray
    tol: float = field(default=PROBABILITY_TOL, repr=False)

    def __post_init__(self):
        psi = as_vector(self.psi, "StateVector")
        norm2 = float(np.real(np.vdot(psi, psi)))
        if abs(norm2 - 1.0) > self.tol:
            raise ValidationError(f"state vector has squared norm {norm2:.17g}, expected 1")
        psi.setflags(write=False)
        object.__setattr__(self, "psi", psi)

    @property
    def n(self) -> int:
        return self.psi.shape[0]

    def density(self) -> DensityMatrix:
        return DensityMatrix(np.outer(self.psi, np.conj(self.psi)))

    def __repr__(self) -> str:
        return f"StateVector(n={self.n})"


@dataclass(frozen=True, eq=False)
class PhaseMatrix:
    """Fases θ_ij (radianos) de uma transformação de gauge de Schur-Hadamard"""
    thetas: np.ndarray

    def __post_init__(self):
        thetas = np.array(self.thetas, dtype=float)
        if thetas.ndim != 2:
            raise DimensionError("PhaseMatrix", "2-dimensional", thetas.shape)
        if not np.all(np.isfinite(thetas)):
            raise NonFiniteError("PhaseMatrix")
        thetas.setflags(write=False)
        object.__setattr__(self, "thetas", thetas)

    @property
    def n(self) -> int:
        return self.thetas.shape[0]

    def factors(self) -> np.ndarray:
        return np.exp(1j * self.thetas)
