"""
Cenários embutidos: arquivos JSON em backend/scenarios, resolvidos por nome.
"""

from pathlib import Path
from typing import List, Union

PRESET_DIR = Path(__file__).resolve().parent.parent / "scenarios"


def list_presets() -> List[str]:
    return sorted(p.stem for p in PRESET_DIR.glob("*.json"))


def resolve_scenario_path(name_or_path: Union[str, Path]) -> Path:
    """Caminho existente, ou nome de um preset ('rotation2d', 'exponential2x2', ...)."""
    path = Path(name_or_path)
    if path.exists():
        return path
    preset = PRESET_DIR / f"{name_or_path}.json"
    if preset.exists():
        return preset
    return path
