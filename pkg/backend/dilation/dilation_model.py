"""
Modelos de dilatação: sistema dilatado N·D e resultado de Stinespring.
"""

from dataclasses import dataclass

import numpy as np

from core.exceptions import DimensionError, InvalidIndexError
from core.linalg import PVM, as_square
from correspondence.correspondence_model import KrausSet


@dataclass(frozen=True, eq=False)
class DilatedSystem:
    """
    Operador de evolução dilatado Θ̃ de lado N·D com PVM interno.

    Índice de linha/coluna: i·D + a (configuração i, rótulo interno a).
    """
    base_dim: int
    internal_dim: int
    gamma: int
    internal_pvm: PVM
    evolution: np.ndarray

    def __post_init__(self):
        evolution = as_square(self.evolution, "dilated evolution")
        side = self.base_dim * self.internal_dim
        if evolution.shape[0] != side:
            raise DimensionError("DilatedSystem", (side, side), evolution.shape)
        if self.internal_pvm.dim != self.internal_dim:
            raise DimensionError("internal_pvm", self.internal_dim, self.internal_pvm.dim)
        if not 0 <= self.gamma < len(self.internal_pvm):
            raise InvalidIndexError("gamma", self.gamma, (0, len(self.internal_pvm)))
        evolution.setflags(write=False)
        object.__setattr__(self, "evolution", evolution)

    @property
    def is_real(self) -> bool:
        return bool(np.all(self.evolution.imag == 0))

    def blocks(self) -> np.ndarray:
        """Blocos D×D [Θ_ij]^I como array (N, N, D, D)."""
        n, d = self.base_dim, self.internal_dim
        return self.evolution.reshape(n, d, n, d).transpose(0, 2, 1, 3).copy()

    def __repr__(self) -> str:
        return f"DilatedSystem(N={self.base_dim}, D={self.internal_dim}, gamma={self.gamma})"


@dataclass(frozen=True, eq=False)
class StinespringResult:
    """Unitária N³×N³ que realiza um conjunto de Kraus com N operadores"""
    kraus_in: KrausSet
    unitary_out: np.ndarray
    ancilla_label: int
    unitarity_residual: float
    reproduction_residual: float

    @property
    def n(self) -> int:
        return self.kraus_in.n

    def __repr__(self) -> str:
        return (
            f"StinespringResult(N={self.n}, side={self.unitary_out.shape[0]}, "
            f"reproduction_residual={self.reproduction_residual:.3e})"
        )
