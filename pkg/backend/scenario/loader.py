"""
Leitura e validação de arquivos de cenário.

Erros de leitura, de JSON e de schema viram ScenarioError com a localização
"arquivo:caminho.do.campo" (ou "arquivo:linha:coluna" para JSON inválido).
"""

import json
from pathlib import Path
from typing import Optional, Union

from pydantic import ValidationError as PydanticValidationError

from config import Settings, get_settings
from core.exceptions import CorrespondenceError, ScenarioError, UnknownQueryError
from infrastructure.logging import get_logger
from scenario import schemas
from scenario.presets import resolve_scenario_path
from scenario.scenario_model import QueryQuantity, Scenario, ToleranceSet
from scenario.systems import build_composite, build_family, build_samples
from stochastic.stochastic_model import ProbabilityVector

logger = get_logger(__name__)


def _location(loc) -> str:
    parts = []
    for item in loc:
        if isinstance(item, int):
            parts.append(f"[{item}]")
        else:
            parts.append(("." if parts else "") + str(item))
    return "".join(parts)


def parse_scenario(data: dict, source: str = "<scenario>") -> schemas.ScenarioSpec:
    try:
        return schemas.ScenarioSpec.model_validate(data)
    except PydanticValidationError as exc:
        first = exc.errors()[0]
        raise ScenarioError(f"{source}:{_location(first['loc'])}", first["msg"]) from exc


def read_scenario_spec(name_or_path: Union[str, Path]) -> tuple:
    path = resolve_scenario_path(name_or_path)
    source = str(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError(source, f"cannot read scenario: {exc.strerror or exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{source}:{exc.lineno}:{exc.colno}", exc.msg) from exc
    if not isinstance(data, dict):
        raise ScenarioError(source, "scenario must be a JSON object")
    return parse_scenario(data, source), source


def _tolerances(spec: schemas.ScenarioSpec, override: Optional[float], settings: Settings) -> ToleranceSet:
    block = spec.tolerances
    structural = block.structural if block and block.structural else settings.STRUCTURAL_TOL
    probability = block.probability if block and block.probability else settings.PROBABILITY_TOL
    degeneracy = block.degeneracy if block and block.degeneracy else settings.DEGENERACY_TOL
    if override is not None:
        structural = probability = override
    return ToleranceSet(
        structural=structural,
        probability=probability,
        degeneracy=degeneracy,
        division_zero=settings.DIVISION_ZERO_TOL,
    )


def _initial(spec: schemas.ScenarioSpec, n: int, source: str) -> ProbabilityVector:
    initial = spec.initial
    try:
        if initial.configuration is not None:
            if initial.configuration >= n:
                raise ScenarioError(f"{source}:initial.configuration", f"must lie in [0, {n}), got {initial.configuration}")
            return ProbabilityVector.point(n, initial.configuration)
        if len(initial.probabilities) != n:
            raise ScenarioError(f"{source}:initial.probabilities", f"expected {n} entries, got {len(initial.probabilities)}")
        return ProbabilityVector(initial.probabilities)
    except ScenarioError:
        raise
    except CorrespondenceError as exc:
        raise ScenarioError(f"{source}:initial", exc.message) from exc


def _check_queries(spec: schemas.ScenarioSpec, scenario: Scenario, source: str) -> None:
    valid = {q.value for q in QueryQuantity}
    for k, query in enumerate(spec.queries):
        where = f"{source}:queries[{k}]"
        if query.quantity not in valid:
            raise UnknownQueryError(f"{where}.quantity", query.quantity)
        quantity = QueryQuantity(query.quantity)
        if not scenario.has_family:
            raise ScenarioError(where, "queries need a system with a unitary family")
        if quantity == QueryQuantity.EXPECTATION and query.observable is None:
            raise ScenarioError(f"{where}.observable", "expectation queries need an observable")
        if quantity == QueryQuantity.INTERFERENCE and not query.t_primes:
            raise ScenarioError(f"{where}.t_primes", "interference queries need a non-empty t' grid")
        if quantity == QueryQuantity.DEVICE_PROBS and not any(
            isinstance(e, schemas.MeasurementEventSpec) and e.time <= query.time for e in spec.events
        ):
            raise ScenarioError(where, "device_probs needs a measurement event at or before the query time")
        if query.draws is not None and quantity != QueryQuantity.PROBABILITIES:
            raise ScenarioError(f"{where}.draws", "Monte Carlo draws apply to probabilities queries only")


def load_scenario(
    name_or_path: Union[str, Path],
    settings: Optional[Settings] = None,
    tol: Optional[float] = None,
    seed: Optional[int] = None,
) -> Scenario:
    """
    Lê, valida e constrói um cenário.

    ``tol`` e ``seed`` (flags da CLI) têm precedência sobre o arquivo.

    Raises:
        ScenarioError: arquivo ilegível, JSON inválido, schema ou parâmetros inválidos
        UnknownQueryError: consulta com quantidade desconhecida
    """
    settings = settings or get_settings()
    spec, source = read_scenario_spec(name_or_path)
    if spec.schema_version != settings.SCENARIO_SCHEMA_VERSION:
        raise ScenarioError(
            f"{source}:schema_version",
            f"unsupported version {spec.schema_version}, expected {settings.SCENARIO_SCHEMA_VERSION}",
        )

    family = composite = None
    samples = []
    if isinstance(spec.system, schemas.TransitionSystem):
        samples = build_samples(spec.system, f"{source}:system")
        n = samples[0].matrix.shape[0]
    elif isinstance(spec.system, (schemas.ProductSystem, schemas.DivisionSystem)):
        composite = build_composite(spec.system, f"{source}:system")
        family = composite.family
        n = family.n
    else:
        family = build_family(spec.system, f"{source}:system")
        n = family.n

    scenario = Scenario(
        spec=spec,
        source=source,
        n=n,
        initial=_initial(spec, n, source),
        family=family,
        composite=composite,
        samples=samples,
        seed=seed if seed is not None else (spec.seed if spec.seed is not None else settings.DEFAULT_SEED),
        tolerances=_tolerances(spec, tol, settings),
        finite_difference_dt=settings.FINITE_DIFFERENCE_DT,
        rk4_steps=settings.RK4_STEPS,
    )
    if spec.events and not scenario.has_family:
        raise ScenarioError(f"{source}:events", "events need a system with a unitary family")
    _check_queries(spec, scenario, source)
    logger.info("Scenario loaded", extra={"scenario": spec.name, "n": n, "kind": spec.system.kind})
    return scenario
