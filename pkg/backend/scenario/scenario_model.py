"""
Cenário já construído: objetos numéricos prontos para verificação e simulação.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from composite.composite_model import CompositeSystem
from core.types import (
    DEGENERACY_TOL,
    DIVISION_ZERO_TOL,
    FINITE_DIFFERENCE_DT,
    INTEGRATION_TOL,
    PROBABILITY_TOL,
    RK4_STEPS,
    STRUCTURAL_TOL,
)
from dynamics.family_model import UnitaryFamily
from scenario.schemas import ScenarioSpec
from stochastic.stochastic_model import ProbabilityVector


class QueryQuantity(str, Enum):
    PROBABILITIES = "probabilities"
    DENSITY = "density"
    INTERFERENCE = "interference"
    EXPECTATION = "expectation"
    DEVICE_PROBS = "device_probs"


class SampleKind(str, Enum):
    GAMMA = "gamma"
    THETA = "theta"


@dataclass(frozen=True, eq=False)
class TransitionSampleData:
    time: float
    kind: SampleKind
    matrix: np.ndarray


@dataclass(frozen=True)
class ToleranceSet:
    structural: float = STRUCTURAL_TOL
    probability: float = PROBABILITY_TOL
    degeneracy: float = DEGENERACY_TOL
    division_zero: float = DIVISION_ZERO_TOL
    integration: float = INTEGRATION_TOL


@dataclass(eq=False)
class Scenario:
    """Cenário validado: o spec original mais os objetos construídos"""
    spec: ScenarioSpec
    source: str
    n: int
    initial: ProbabilityVector
    family: Optional[UnitaryFamily] = None
    composite: Optional[CompositeSystem] = None
    samples: List[TransitionSampleData] = field(default_factory=list)
    seed: Optional[int] = None
    tolerances: ToleranceSet = field(default_factory=ToleranceSet)
    finite_difference_dt: float = FINITE_DIFFERENCE_DT
    rk4_steps: int = RK4_STEPS

    @property
    def name(self) -> str:
        return self.spec.name

    @property
    def has_family(self) -> bool:
        return self.family is not None

    @property
    def initial_configuration(self) -> Optional[int]:
        return self.spec.initial.configuration

    def factor_dims(self) -> Optional[Tuple[int, ...]]:
        return self.composite.dims if self.composite is not None else None
