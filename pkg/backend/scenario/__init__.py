"""Cenários declarativos: schemas, presets e carregamento."""

from .scenario_model import QueryQuantity, SampleKind, Scenario, ToleranceSet, TransitionSampleData
from .loader import load_scenario, parse_scenario, read_scenario_spec
from .presets import PRESET_DIR, list_presets, resolve_scenario_path
from .systems import build_composite, build_family, build_samples, to_array

__all__ = [
    "QueryQuantity",
    "SampleKind",
    "Scenario",
    "ToleranceSet",
    "TransitionSampleData",
    "load_scenario",
    "parse_scenario",
    "read_scenario_spec",
    "PRESET_DIR",
    "list_presets",
    "resolve_scenario_path",
    "build_composite",
    "build_family",
    "build_samples",
    "to_array",
]
