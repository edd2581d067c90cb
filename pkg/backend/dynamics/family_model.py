"""
Famílias unitárias U(t) e Hamiltonianos.

Cada família sabe avaliar U(t), declara seu domínio e os instantes em que
o gerador é descontínuo (``breakpoints``) e, quando conhecido em forma
fechada, fornece o Hamiltoniano exato.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import expm, logm

from core.exceptions import DimensionError, EvaluationError, PreconditionError, ValidationError
from core.linalg import as_square, dagger, max_abs, require_self_adjoint, require_unitary
from core.types import PROBABILITY_TOL, STRUCTURAL_TOL

# Gerador da rotação 2×2: H = ħω σ_y
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])

Domain = Tuple[float, float]
UNBOUNDED: Domain = (-np.inf, np.inf)


class FamilyKind(str, Enum):
    CONSTANT_HAMILTONIAN = "constant-hamiltonian"
    PIECEWISE_CONSTANT_HAMILTONIAN = "piecewise-constant-hamiltonian"
    ROTATION_2D = "rotation-2d"
    SAMPLED_GRID = "sampled-grid"
    EXPONENTIAL_2D = "exponential-2d"
    PRODUCT = "product"
    DIVISION_EVENT = "division-event"


@dataclass(frozen=True, eq=False)
class Hamiltonian:
    """Gerador autoadjunto H(t) = iħ (∂U/∂t) U†(t)"""
    H: np.ndarray
    hbar: float = 1.0
    symmetrization_residual: float = 0.0
    tol: float = field(default=STRUCTURAL_TOL, repr=False)

    def __post_init__(self):
        if self.hbar <= 0:
            raise PreconditionError("Hamiltonian", f"hbar must be positive, got {self.hbar}")
        H = require_self_adjoint(self.H, "H", self.tol)
        H.setflags(write=False)
        object.__setattr__(self, "H", H)

    @property
    def n(self) -> int:
        return self.H.shape[0]


class UnitaryFamily(ABC):
    """Família U(t) com U(0) = 𝟙"""

    kind: FamilyKind

    def __init__(self, n: int, hbar: float = 1.0):
        if n < 1:
            raise DimensionError(self.__class__.__name__, "n >= 1", n)
        if hbar <= 0:
            raise PreconditionError(self.__class__.__name__, f"hbar must be positive, got {hbar}")
        self.n = n
        self.hbar = float(hbar)

    @abstractmethod
    def unitary(self, t: float) -> np.ndarray:
        """U(t) sem validação."""

    def exact_hamiltonian(self, t: float) -> Optional[np.ndarray]:
        """H(t) em forma fechada, quando disponível."""
        return None

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return ()

    @property
    def domain(self) -> Domain:
        return UNBOUNDED

    def check_domain(self, t: float) -> None:
        lo, hi = self.domain
        if not (lo <= t <= hi):
            raise EvaluationError(self.kind.value, t, self.domain)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(kind={self.kind.value}, n={self.n}, hbar={self.hbar})"


# =============================================================================
# FAMÍLIAS
# =============================================================================

class ConstantHamiltonianFamily(UnitaryFamily):
    """U(t) = exp(−iHt/ħ)"""

    kind = FamilyKind.CONSTANT_HAMILTONIAN

    def __init__(self, H, hbar: float = 1.0):
        H = require_self_adjoint(H, "H")
        super().__init__(H.shape[0], hbar)
        self.H = 0.5 * (H + dagger(H))

    def unitary(self, t: float) -> np.ndarray:
        return expm(-1j * self.H * t / self.hbar)

    def exact_hamiltonian(self, t: float) -> np.ndarray:
        return self.H


class PiecewiseHamiltonianFamily(UnitaryFamily):
    """
    H constante por partes: H_k vale em [s_k, s_{k+1}), com s_0 = 0.
    Para t < 0 vale H_0.
    """

    kind = FamilyKind.PIECEWISE_CONSTANT_HAMILTONIAN

    def __init__(self, hamiltonians: Sequence, starts: Sequence[float], hbar: float = 1.0):
        if len(hamiltonians) == 0 or len(hamiltonians) != len(starts):
            raise DimensionError("piecewise family", "one start time per Hamiltonian", (len(hamiltonians), len(starts)))
        blocks = [require_self_adjoint(H, f"H[{k}]") for k, H in enumerate(hamiltonians)]
        super().__init__(blocks[0].shape[0], hbar)
        for k, H in enumerate(blocks):
            if H.shape != (self.n, self.n):
                raise DimensionError(f"H[{k}]", (self.n, self.n), H.shape)
        starts = [float(s) for s in starts]
        if starts[0] != 0.0 or any(b <= a for a, b in zip(starts, starts[1:])):
            raise PreconditionError("piecewise family", "starts must begin at 0 and increase strictly")

        self.hamiltonians = [0.5 * (H + dagger(H)) for H in blocks]
        self.starts = starts
        # U(s_k), acumulado peça a peça
        self._anchors: List[np.ndarray] = [np.eye(self.n, dtype=complex)]
        for k in range(1, len(starts)):
            step = expm(-1j * self.hamiltonians[k - 1] * (starts[k] - starts[k - 1]) / self.hbar)
            self._anchors.append(step @ self._anchors[-1])

    def _piece(self, t: float) -> int:
        if t < 0:
            return 0
        return int(np.searchsorted(self.starts, t, side="right")) - 1

    def unitary(self, t: float) -> np.ndarray:
        k = self._piece(t)
        return expm(-1j * self.hamiltonians[k] * (t - self.starts[k]) / self.hbar) @ self._anchors[k]

    def exact_hamiltonian(self, t: float) -> np.ndarray:
        return self.hamiltonians[self._piece(t)]

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return tuple(self.starts[1:])


class RotationFamily(UnitaryFamily):
    """U(t) = [[cos ωt, −sin ωt], [sin ωt, cos ωt]]"""

    kind = FamilyKind.ROTATION_2D

    def __init__(self, omega: float, hbar: float = 1.0):
        super().__init__(2, hbar)
        self.omega = float(omega)

    def unitary(self, t: float) -> np.ndarray:
        c, s = np.cos(self.omega * t), np.sin(self.omega * t)
        return np.array([[c, -s], [s, c]], dtype=complex)

    def exact_hamiltonian(self, t: float) -> np.ndarray:
        return self.hbar * self.omega * SIGMA_Y


class ExponentialFamily(UnitaryFamily):
    """
    Rotação real R(θ(t)) com cos²θ = e^{−t²/τ²}; θ é ímpar em t.

    Sua matriz de transição é a família exponencial 2×2.
    """

    kind = FamilyKind.EXPONENTIAL_2D

    def __init__(self, tau: float, hbar: float = 1.0):
        if tau <= 0:
            raise PreconditionError("exponential family", f"tau must be positive, got {tau}")
        super().__init__(2, hbar)
        self.tau = float(tau)

    def angle(self, t: float) -> float:
        x2 = (t / self.tau) ** 2
        return float(np.sign(t) * np.arctan2(np.sqrt(-np.expm1(-x2)), np.exp(-0.5 * x2)))

    def angular_velocity(self, t: float) -> float:
        if t == 0:
            return 1.0 / self.tau
        x2 = (t / self.tau) ** 2
        return float(abs(t) * np.exp(-0.5 * x2) / (self.tau ** 2 * np.sqrt(-np.expm1(-x2))))

    def unitary(self, t: float) -> np.ndarray:
        theta = self.angle(t)
        c, s = np.cos(theta), np.sin(theta)
        return np.array([[c, -s], [s, c]], dtype=complex)

    def exact_hamiltonian(self, t: float) -> np.ndarray:
        return self.hbar * self.angular_velocity(t) * SIGMA_Y


class SampledGridFamily(UnitaryFamily):
    """
    U(t) amostrada numa grade t_0 = 0 < t_1 < ... < t_K.

    Entre nós a interpolação é geodésica:
    U(t) = U_k exp(s log(U_k† U_{k+1})), s = (t − t_k)/(t_{k+1} − t_k).
    """

    kind = FamilyKind.SAMPLED_GRID

    def __init__(self, times: Sequence[float], unitaries: Sequence, hbar: float = 1.0, tol: float = STRUCTURAL_TOL):
        if len(times) < 2 or len(times) != len(unitaries):
            raise DimensionError("sampled grid", "at least two (t, U) pairs", (len(times), len(unitaries)))
        mats = [require_unitary(U, f"U[{k}]", tol) for k, U in enumerate(unitaries)]
        super().__init__(mats[0].shape[0], hbar)
        for k, U in enumerate(mats):
            if U.shape != (self.n, self.n):
                raise DimensionError(f"U[{k}]", (self.n, self.n), U.shape)
        times = [float(t) for t in times]
        if times[0] != 0.0 or any(b <= a for a, b in zip(times, times[1:])):
            raise PreconditionError("sampled grid", "times must begin at 0 and increase strictly")
        if max_abs(mats[0] - np.eye(self.n)) > PROBABILITY_TOL:
            raise ValidationError("sampled grid must start with U(0) = identity")

        self.times = times
        self.unitaries = mats
        self._generators = []
        for U_k, U_next in zip(mats, mats[1:]):
            L = logm(dagger(U_k) @ U_next)
            self._generators.append(0.5 * (L - dagger(L)))

    @property
    def domain(self) -> Domain:
        return (self.times[0], self.times[-1])

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return tuple(self.times[1:-1])

    def _interval(self, t: float) -> int:
        self.check_domain(t)
        return min(int(np.searchsorted(self.times, t, side="right")) - 1, len(self.times) - 2)

    def unitary(self, t: float) -> np.ndarray:
        k = self._interval(t)
        if t == self.times[k]:
            return self.unitaries[k].copy()
        if t == self.times[k + 1]:
            return self.unitaries[k + 1].copy()
        s = (t - self.times[k]) / (self.times[k + 1] - self.times[k])
        return self.unitaries[k] @ expm(s * self._generators[k])

    def exact_hamiltonian(self, t: float) -> np.ndarray:
        k = self._interval(t)
        width = self.times[k + 1] - self.times[k]
        U_k = self.unitaries[k]
        return 1j * self.hbar * U_k @ self._generators[k] @ dagger(U_k) / width


class ProductFamily(UnitaryFamily):
    """U(t) = U_1(t) ⊗ U_2(t) ⊗ ... na convenção de pares do núcleo"""

    kind = FamilyKind.PRODUCT

    def __init__(self, factors: Sequence[UnitaryFamily]):
        if not factors:
            raise DimensionError("product family", "at least one factor", 0)
        hbars = {f.hbar for f in factors}
        if len(hbars) != 1:
            raise PreconditionError("product family", "factors must share hbar")
        super().__init__(int(np.prod([f.n for f in factors])), hbars.pop())
        self.factors = list(factors)

    def unitary(self, t: float) -> np.ndarray:
        result = np.ones((1, 1), dtype=complex)
        for f in self.factors:
            result = np.kron(result, f.unitary(t))
        return result

    def exact_hamiltonian(self, t: float) -> Optional[np.ndarray]:
        total = np.zeros((self.n, self.n), dtype=complex)
        dims = [f.n for f in self.factors]
        for k, f in enumerate(self.factors):
            H_k = f.exact_hamiltonian(t)
            if H_k is None:
                return None
            left = np.eye(int(np.prod(dims[:k])))
            right = np.eye(int(np.prod(dims[k + 1:])))
            total += np.kron(np.kron(left, H_k), right)
        return total

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return tuple(sorted({b for f in self.factors for b in f.breakpoints}))

    @property
    def domain(self) -> Domain:
        return (max(f.domain[0] for f in self.factors), min(f.domain[1] for f in self.factors))


class RelativeFamily(UnitaryFamily):
    """U(s) = U_base(t0 + s) U_base(t0)†, a evolução relativa a partir de t0"""

    def __init__(self, base: UnitaryFamily, t0: float):
        base.check_domain(t0)
        super().__init__(base.n, base.hbar)
        self.base = base
        self.t0 = float(t0)
        self.kind = base.kind
        self._anchor_dagger = dagger(base.unitary(self.t0))

    def unitary(self, t: float) -> np.ndarray:
        return self.base.unitary(self.t0 + t) @ self._anchor_dagger

    def exact_hamiltonian(self, t: float) -> Optional[np.ndarray]:
        return self.base.exact_hamiltonian(self.t0 + t)

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return tuple(b - self.t0 for b in self.base.breakpoints if b > self.t0)

    @property
    def domain(self) -> Domain:
        lo, hi = self.base.domain
        return (max(lo - self.t0, 0.0), hi - self.t0)

    def check_domain(self, t: float) -> None:
        lo, hi = self.domain
        if not (lo <= t <= hi):
            raise EvaluationError(self.kind.value, t, self.domain)
        self.base.check_domain(self.t0 + t)


def identity_family(n: int, hbar: float = 1.0) -> ConstantHamiltonianFamily:
    return ConstantHamiltonianFamily(np.zeros((n, n), dtype=complex), hbar)


def unitary_generator(U, hbar: float = 1.0) -> np.ndarray:
    """H com exp(−iH/ħ) = U (log principal), para montar famílias a partir de um passo."""
    U = require_unitary(as_square(U, "U"), "U")
    L = logm(U)
    H = 1j * hbar * 0.5 * (L - dagger(L))
    return 0.5 * (H + dagger(H))
