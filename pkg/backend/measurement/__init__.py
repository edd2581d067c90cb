"""Observáveis, emergíveis e o processo de medição."""

from .measurement_model import CollapsedState, MeasurementResult, MeasurementScenario, Observable
from .observables import emergeable_expectation_residual, emergeable_velocity, observable_matrix, spectral_decompose
from .process import (
    collapse,
    composite_joint,
    composite_state_at_event,
    conditional_density,
    device_born_rule,
    hybrid_matrix,
    repeat_probability,
    run_measurement,
)
from .uncertainty import UncertaintyResult, uncertainty_check

__all__ = [
    "CollapsedState",
    "MeasurementResult",
    "MeasurementScenario",
    "Observable",
    "emergeable_expectation_residual",
    "emergeable_velocity",
    "observable_matrix",
    "spectral_decompose",
    "collapse",
    "composite_joint",
    "composite_state_at_event",
    "conditional_density",
    "device_born_rule",
    "hybrid_matrix",
    "repeat_probability",
    "run_measurement",
    "UncertaintyResult",
    "uncertainty_check",
]
