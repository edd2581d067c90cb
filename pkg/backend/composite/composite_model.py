"""
Modelos de sistemas compostos e de mapas de correlação sujeito-ambiente.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from core.exceptions import DimensionError, InvalidIndexError, NonInjectiveMapError
from correspondence.correspondence_model import DensityMatrix
from dynamics.family_model import UnitaryFamily


@dataclass(frozen=True)
class CorrelationMap:
    """Mapa injetivo i ↦ e(i) das configurações do sujeito nas do ambiente"""
    subject_dim: int
    environment_dim: int
    e_of: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "e_of", tuple(int(e) for e in self.e_of))
        if len(self.e_of) != self.subject_dim:
            raise DimensionError("CorrelationMap.e_of", self.subject_dim, len(self.e_of))
        for e in self.e_of:
            if not 0 <= e < self.environment_dim:
                raise InvalidIndexError("e_of", e, (0, self.environment_dim))
        if len(set(self.e_of)) != len(self.e_of):
            raise NonInjectiveMapError("e_of", self.e_of)

    @classmethod
    def identity(cls, n: int, environment_dim: Optional[int] = None) -> "CorrelationMap":
        return cls(n, environment_dim or n, tuple(range(n)))


@dataclass(eq=False)
class CompositeSystem:
    """Sistema composto por fatores (nome, dimensão) com família no produto"""
    factors: List[Tuple[str, int]]
    family: UnitaryFamily
    event_times: Tuple[float, ...] = ()
    correlation: Optional[CorrelationMap] = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.factors = [(str(name), int(dim)) for name, dim in self.factors]
        total = int(np.prod([dim for _, dim in self.factors]))
        if total != self.family.n:
            raise DimensionError("CompositeSystem", total, self.family.n)

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(dim for _, dim in self.factors)

    def pair_index(self, *indices: int) -> int:
        """Índice linear (i, e, ...) ↦ i·dimE + e na convenção do núcleo."""
        return int(np.ravel_multi_index(indices, self.dims))

    def __repr__(self) -> str:
        names = " x ".join(f"{name}({dim})" for name, dim in self.factors)
        return f"CompositeSystem({names}, kind={self.family.kind.value})"


@dataclass(frozen=True, eq=False)
class DecoherenceResult:
    """Matriz de densidade do sujeito com e sem o evento de divisão"""
    rho_isolated: DensityMatrix
    rho_decohered: DensityMatrix
    coherence_norm_drop: float
    partial_trace_residual: float


@dataclass(frozen=True, eq=False)
class EntanglementResult:
    """Teste de fatoração Γ^{AB} ≟ Γ^A ⊗ Γ^B com marginais canônicas"""
    factorizable: bool
    best_residual: float
    gamma_joint: np.ndarray
    gamma_a: np.ndarray
    gamma_b: np.ndarray
    t: float
    t_prime: Optional[float] = None
