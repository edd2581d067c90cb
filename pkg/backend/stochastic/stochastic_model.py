"""
Tipos da camada estocástica: matrizes de transição, vetores de
probabilidade e variáveis aleatórias sobre um espaço de configurações finito.
"""

from dataclasses import dataclass, field

import numpy as np

from core.exceptions import DimensionError, NonFiniteError, ProbabilityError, StochasticityError
from core.types import PROBABILITY_TOL


def _real_array(values, name: str, ndim: int) -> np.ndarray:
    arr = np.array(values)
    if np.iscomplexobj(arr):
        if np.max(np.abs(arr.imag), initial=0.0) > PROBABILITY_TOL:
            raise ProbabilityError(f"{name} has non-negligible imaginary parts")
        arr = arr.real
    arr = np.array(arr, dtype=float)
    if ndim == 1:
        arr = arr.reshape(-1)
    if arr.ndim != ndim or arr.size == 0:
        raise DimensionError(name, f"{ndim}-dimensional, non-empty", arr.shape)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError(name)
    return arr


def stochasticity_violation(entries: np.ndarray, tol: float):
    """Primeira coluna fora do simplex, como (coluna, soma, mínimo), ou None."""
    sums = entries.sum(axis=0)
    mins = entries.min(axis=0)
    for j in range(entries.shape[1]):
        if mins[j] < -tol or abs(sums[j] - 1.0) > tol:
            return j, float(sums[j]), float(mins[j])
    return None


def is_column_stochastic(entries, tol: float = PROBABILITY_TOL) -> bool:
    arr = np.asarray(entries, dtype=float)
    return arr.ndim == 2 and stochasticity_violation(arr, tol) is None


@dataclass(frozen=True, eq=False)
class StochasticMatrix:
    """Matriz de transição Γ com colunas de probabilidade (Γ_ij = p(i,t|j,0))"""
    entries: np.ndarray
    tol: float = field(default=PROBABILITY_TOL, repr=False, compare=False)

    def __post_init__(self):
        arr = _real_array(self.entries, "StochasticMatrix", ndim=2)
        if arr.shape[0] != arr.shape[1]:
            raise DimensionError("StochasticMatrix", "square", arr.shape)
        violation = stochasticity_violation(arr, self.tol)
        if violation is not None:
            raise StochasticityError(violation[0], violation[1], violation[2], self.tol)
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def column(self, j: int) -> np.ndarray:
        return self.entries[:, j]

    def row_sums(self) -> np.ndarray:
        return self.entries.sum(axis=1)

    def is_doubly_stochastic(self, tol: float = PROBABILITY_TOL) -> bool:
        return bool(np.max(np.abs(self.row_sums() - 1.0)) <= tol)

    def __matmul__(self, other: "StochasticMatrix") -> "StochasticMatrix":
        return StochasticMatrix(self.entries @ other.entries, tol=max(self.tol, other.tol))

    def __repr__(self) -> str:
        return f"StochasticMatrix(n={self.n})"


@dataclass(frozen=True, eq=False)
class ProbabilityVector:
    """Distribuição p_i sobre as configurações"""
    entries: np.ndarray
    tol: float = field(default=PROBABILITY_TOL, repr=False, compare=False)

    def __post_init__(self):
        arr = _real_array(self.entries, "ProbabilityVector", ndim=1)
        if arr.min() < -self.tol:
            raise ProbabilityError(f"negative entry {arr.min():.17g}")
        total = float(arr.sum())
        if abs(total - 1.0) > self.tol:
            raise ProbabilityError("entries do not sum to 1", total=total)
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def point(cls, n: int, j: int) -> "ProbabilityVector":
        """Distribuição concentrada na configuração j."""
        p = np.zeros(n)
        p[j] = 1.0
        return cls(p)

    @classmethod
    def uniform(cls, n: int) -> "ProbabilityVector":
        return cls(np.full(n, 1.0 / n))

    def __repr__(self) -> str:
        return f"ProbabilityVector({np.array2string(self.entries, precision=6)})"


@dataclass(frozen=True, eq=False)
class RandomVariable:
    """Variável aleatória de configuração com magnitudes a_i"""
    magnitudes: np.ndarray

    def __post_init__(self):
        arr = _real_array(self.magnitudes, "RandomVariable", ndim=1)
        arr.setflags(write=False)
        object.__setattr__(self, "magnitudes", arr)

    @property
    def n(self) -> int:
        return self.magnitudes.shape[0]

    def as_matrix(self) -> np.ndarray:
        """A = Σ a_i P_i (diagonal)."""
        return np.diag(self.magnitudes).astype(complex)
