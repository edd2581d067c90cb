"""
Construção de famílias unitárias e sistemas compostos a partir dos schemas.
"""

from typing import List

import numpy as np

from composite.composite_model import CompositeSystem, CorrelationMap
from composite.division import build_division_scenario
from core.exceptions import CorrespondenceError, ScenarioError
from dynamics.family_model import (
    ConstantHamiltonianFamily,
    ExponentialFamily,
    PiecewiseHamiltonianFamily,
    ProductFamily,
    RotationFamily,
    SampledGridFamily,
    UnitaryFamily,
)
from scenario.scenario_model import SampleKind, TransitionSampleData
from scenario import schemas


def to_array(rows: schemas.MatrixRows) -> np.ndarray:
    """Linhas JSON (reais ou pares [re, im]) → matriz complexa."""
    return np.array(
        [[complex(e[0], e[1]) if isinstance(e, list) else complex(e) for e in row] for row in rows],
        dtype=complex,
    )


def build_family(spec, location: str = "system") -> UnitaryFamily:
    """
    Raises:
        ScenarioError: parâmetros inválidos, com a localização no cenário
    """
    try:
        return _build_family(spec, location)
    except ScenarioError:
        raise
    except CorrespondenceError as exc:
        raise ScenarioError(location, exc.message) from exc


def _build_family(spec, location: str) -> UnitaryFamily:
    if isinstance(spec, schemas.RotationSystem):
        return RotationFamily(spec.omega, spec.hbar)
    if isinstance(spec, schemas.ExponentialSystem):
        return ExponentialFamily(spec.tau, spec.hbar)
    if isinstance(spec, schemas.ConstantHamiltonianSystem):
        return ConstantHamiltonianFamily(to_array(spec.hamiltonian), spec.hbar)
    if isinstance(spec, schemas.PiecewiseHamiltonianSystem):
        return PiecewiseHamiltonianFamily([to_array(h) for h in spec.hamiltonians], spec.starts, spec.hbar)
    if isinstance(spec, schemas.SampledGridSystem):
        return SampledGridFamily(spec.times, [to_array(u) for u in spec.unitaries], spec.hbar)
    if isinstance(spec, schemas.ProductSystem):
        return ProductFamily(
            [build_family(f.system, f"{location}.factors[{k}].system") for k, f in enumerate(spec.factors)]
        )
    if isinstance(spec, schemas.DivisionSystem):
        return build_composite(spec, location).family
    raise ScenarioError(location, f"system kind '{spec.kind}' has no unitary family")


def build_composite(spec, location: str = "system") -> CompositeSystem:
    """Sistema composto para 'product' (fatores nomeados) e 'division-event'."""
    try:
        if isinstance(spec, schemas.ProductSystem):
            family = build_family(spec, location)
            factors = [(f.name, sub.n) for f, sub in zip(spec.factors, family.factors)]
            return CompositeSystem(factors=factors, family=family)
        if isinstance(spec, schemas.DivisionSystem):
            pre = to_array(spec.subject_pre)
            corr = CorrelationMap(pre.shape[0], spec.environment_dim, tuple(spec.e_of))
            return build_division_scenario(
                pre,
                corr,
                build_family(spec.subject_post, f"{location}.subject_post"),
                build_family(spec.environment_post, f"{location}.environment_post"),
                spec.t_prime,
            )
    except ScenarioError:
        raise
    except CorrespondenceError as exc:
        raise ScenarioError(location, exc.message) from exc
    raise ScenarioError(location, f"system kind '{spec.kind}' is not composite")


def build_samples(spec: schemas.TransitionSystem, location: str = "system") -> List[TransitionSampleData]:
    samples = []
    for k, sample in enumerate(spec.samples):
        if sample.gamma is not None:
            matrix = np.real(to_array(sample.gamma))
            kind = SampleKind.GAMMA
        else:
            matrix = to_array(sample.theta)
            kind = SampleKind.THETA
        if matrix.shape[0] != matrix.shape[1]:
            raise ScenarioError(f"{location}.samples[{k}]", f"matrix must be square, got {matrix.shape}")
        samples.append(TransitionSampleData(time=sample.time, kind=kind, matrix=matrix))
    sizes = {s.matrix.shape[0] for s in samples}
    if len(sizes) != 1:
        raise ScenarioError(f"{location}.samples", f"all samples must share one dimension, got {sorted(sizes)}")
    return samples

