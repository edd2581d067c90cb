"""
Relatórios de interferência (indivisibilidade) entre t′ e t.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np


@dataclass(frozen=True, eq=False)
class InterferenceReport:
    """Discrepância Γ(t) − Γ(t←t′)Γ(t′) para a condição inicial j0"""
    t: float
    t_prime: float
    j0: int
    gamma_actual: np.ndarray
    gamma_divided: np.ndarray
    discrepancy: np.ndarray
    cross_terms: np.ndarray
    max_abs_discrepancy: float
    route_residual: float
    subject_dims: Optional[Tuple[int, int]] = None

    @property
    def matrix_max_abs(self) -> float:
        """Máximo sobre todas as colunas (todas as condições iniciais puras)."""
        return float(np.max(np.abs(self.discrepancy)))

    def __repr__(self) -> str:
        return (
            f"InterferenceReport(t={self.t}, t_prime={self.t_prime}, j0={self.j0}, "
            f"max_abs_discrepancy={self.max_abs_discrepancy:.3e})"
        )


@dataclass(frozen=True)
class ProfilePoint:
    t_prime: float
    max_abs_discrepancy: float
    division_event: bool
