"""Orquestração de cenários: verificação e simulação."""

from .verifier import ScenarioVerifier, VerificationReport, verify_scenario
from .simulator import (
    MeasurementRecord,
    MeasurementRun,
    QueryResult,
    SimulationResult,
    Simulator,
    build_timeline,
    interference_profile,
    measurement_scenario,
    profile_columns,
    run_measurement_scenario,
    simulate,
)

__all__ = [
    "ScenarioVerifier",
    "VerificationReport",
    "verify_scenario",
    "MeasurementRecord",
    "MeasurementRun",
    "QueryResult",
    "SimulationResult",
    "Simulator",
    "build_timeline",
    "interference_profile",
    "measurement_scenario",
    "profile_columns",
    "run_measurement_scenario",
    "simulate",
]
