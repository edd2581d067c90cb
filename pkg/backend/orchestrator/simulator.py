"""
Motor de simulação de cenários.

Acompanha a matriz densidade ao longo da linha do tempo: entre passos
evolui com U(t)U†(t_atual); eventos de divisão decoerem ρ para a diagonal;
eventos de medição aplicam a mistura de Lüders Σ P̃ρP̃ e registram as
probabilidades do aparelho. Consultas são respondidas no instante pedido.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from core.exceptions import ScenarioError
from core.linalg import dagger, symmetrize
from correspondence.correspondence_model import DensityMatrix
from correspondence.states import configuration_probabilities, expectation_qm
from dynamics.family_model import RelativeFamily
from dynamics.generators import evaluate
from infrastructure.logging import get_logger, log_duration
from interference.analysis import divisibility_profile
from interference.interference_model import ProfilePoint
from measurement.measurement_model import CollapsedState, MeasurementResult, MeasurementScenario, Observable
from measurement.observables import spectral_decompose
from measurement.process import collapse, repeat_probability, run_measurement
from scenario import schemas
from scenario.scenario_model import QueryQuantity, Scenario
from scenario.systems import to_array
from stochastic.sampling import SEED_RANGE, make_rng, sample_column
from stochastic.stochastic_model import ProbabilityVector

logger = get_logger(__name__)


# =============================================================================
# RESULTADOS
# =============================================================================

@dataclass(frozen=True, eq=False)
class MeasurementRecord:
    """Probabilidades do aparelho registradas num evento de medição"""
    time: float
    observable: Observable
    probabilities: ProbabilityVector


@dataclass(eq=False)
class QueryResult:
    """
    Resposta a uma consulta.

    ``columns`` guarda as colunas da tabela de saída em ordem; consultas de
    densidade preenchem ``matrix``.
    """
    index: int
    quantity: QueryQuantity
    time: float
    label: str
    columns: Dict[str, np.ndarray] = field(default_factory=dict)
    matrix: Optional[np.ndarray] = None


@dataclass
class SimulationResult:
    scenario: str
    queries: List[QueryResult] = field(default_factory=list)
    measurements: List[MeasurementRecord] = field(default_factory=list)


@dataclass(frozen=True, eq=False)
class MeasurementRun:
    """Saída do comando measure: processo completo e um colapso por resultado"""
    scenario: MeasurementScenario
    result: MeasurementResult
    collapsed: List[CollapsedState]
    repeat_probabilities: List[float]


@dataclass(frozen=True)
class _Step:
    time: float
    order: int
    item: Union[schemas.DivisionEventSpec, schemas.MeasurementEventSpec, schemas.QuerySpec]
    position: int


def build_timeline(spec: schemas.ScenarioSpec) -> List[_Step]:
    """Eventos e consultas em ordem de tempo; no mesmo instante eventos vêm antes."""
    steps = [_Step(e.time, 0, e, k) for k, e in enumerate(spec.events)]
    steps += [_Step(q.time, 1, q, k) for k, q in enumerate(spec.queries)]
    return sorted(steps, key=lambda s: (s.time, s.order, s.position))


# =============================================================================
# SIMULADOR
# =============================================================================

class Simulator:
    """Executa eventos e consultas de um cenário com família unitária"""

    def __init__(self, scenario: Scenario):
        if not scenario.has_family:
            raise ScenarioError(f"{scenario.source}:system", "simulation needs a system with a unitary family")
        self.scenario = scenario
        self.family = scenario.family
        self.tol = scenario.tolerances
        self.records: List[MeasurementRecord] = []

        start = max(0.0, float(self.family.domain[0]))
        U0 = evaluate(self.family, start, self.tol.structural)
        self.t_current = start
        self.rho = (U0 * scenario.initial.entries) @ dagger(U0)

    @log_duration("simulate")
    def run(self) -> SimulationResult:
        result = SimulationResult(scenario=self.scenario.name, measurements=self.records)
        for step in build_timeline(self.scenario.spec):
            self._advance(step.time)
            if isinstance(step.item, schemas.DivisionEventSpec):
                self._division_event(step.time)
            elif isinstance(step.item, schemas.MeasurementEventSpec):
                self._measurement_event(step.item)
            else:
                result.queries.append(self._answer(step.position, step.item))
        logger.info(
            "Simulation finished",
            extra={"queries": len(result.queries), "measurements": len(self.records)},
        )
        return result

    # =========================================================================
    # EVOLUÇÃO E EVENTOS
    # =========================================================================

    def _advance(self, t: float) -> None:
        if t == self.t_current:
            return
        relative = evaluate(self.family, t, self.tol.structural) @ dagger(
            evaluate(self.family, self.t_current, self.tol.structural)
        )
        self.rho, _ = symmetrize(relative @ self.rho @ dagger(relative))
        self.t_current = t

    def density(self) -> DensityMatrix:
        return DensityMatrix(self.rho, tol=self.tol.structural)

    def _division_event(self, t: float) -> None:
        self.rho = np.diag(np.diag(self.rho))
        logger.debug("Division event applied", extra={"t": t})

    def _measurement_event(self, event: schemas.MeasurementEventSpec) -> None:
        observable = spectral_decompose(to_array(event.observable), self.tol.degeneracy)
        if observable.n != self.rho.shape[0]:
            raise ScenarioError(
                f"{self.scenario.source}:events",
                f"measurement observable has side {observable.n}, system has {self.rho.shape[0]}",
            )
        probabilities = [float(np.real(np.trace(P @ self.rho))) for P in observable.projectors]
        lueders = sum(P @ self.rho @ P for P in observable.projectors)
        self.rho, _ = symmetrize(lueders)
        record = MeasurementRecord(
            time=event.time,
            observable=observable,
            probabilities=ProbabilityVector(np.clip(probabilities, 0.0, None), tol=self.tol.structural),
        )
        self.records.append(record)
        logger.debug("Measurement event applied", extra={"t": event.time, "probabilities": probabilities})

    # =========================================================================
    # CONSULTAS
    # =========================================================================

    def _answer(self, k: int, query: schemas.QuerySpec) -> QueryResult:
        quantity = QueryQuantity(query.quantity)
        result = QueryResult(index=k, quantity=quantity, time=query.time, label=query.label or f"q{k}")

        if quantity == QueryQuantity.PROBABILITIES:
            probabilities = configuration_probabilities(self.density())
            values = probabilities.entries
            if query.draws is not None:
                # histograma normalizado: contagem / draws
                counts = sample_column(probabilities.entries, query.draws, make_rng(self._draw_seed(k)))
                values = counts / query.draws
            result.columns = {"index": np.arange(probabilities.n), "value": values}
        elif quantity == QueryQuantity.DENSITY:
            result.matrix = self.density().rho.copy()
        elif quantity == QueryQuantity.EXPECTATION:
            value = expectation_qm(to_array(query.observable), self.density(), self.tol.structural)
            result.columns = {"time": np.array([query.time]), "value": np.array([value])}
        elif quantity == QueryQuantity.INTERFERENCE:
            profile = interference_profile(self.scenario, query.time, query.t_primes, query.j0)
            result.columns = profile_columns(profile)
        else:
            record = self._latest_measurement(query.time)
            result.columns = {
                "outcome": np.arange(record.observable.outcome_count),
                "eigenvalue": np.array(record.observable.eigenvalues),
                "probability": record.probabilities.entries,
            }
        return result

    def _draw_seed(self, k: int) -> int:
        seed = self.scenario.seed
        if seed is None:
            raise ScenarioError(
                f"{self.scenario.source}:queries[{k}].draws",
                "Monte Carlo draws need an explicit seed (--seed or the scenario 'seed' field)",
            )
        return (seed + k) % SEED_RANGE[1]

    def _latest_measurement(self, t: float) -> MeasurementRecord:
        previous = [r for r in self.records if r.time <= t]
        if not previous:
            raise ScenarioError(self.scenario.source, f"no measurement event at or before t={t}")
        return previous[-1]


def simulate(scenario: Scenario) -> SimulationResult:
    return Simulator(scenario).run()


# =============================================================================
# PERFIL DE INTERFERÊNCIA
# =============================================================================

def interference_profile(
    scenario: Scenario,
    t: float,
    grid: Sequence[float],
    j0: Optional[int] = None,
) -> List[ProfilePoint]:
    """
    Discrepância de interferência sobre a grade de t′.

    Em cenários de divisão ``j0`` é a configuração do sujeito, com o
    ambiente na configuração 0, e a discrepância é marginalizada no sujeito.
    """
    if j0 is None:
        j0 = scenario.initial_configuration or 0
    subject_dims: Optional[Tuple[int, int]] = None
    if scenario.composite is not None and scenario.spec.system.kind == "division-event":
        subject_dims = scenario.composite.dims
        j0 = scenario.composite.pair_index(j0, 0)
    return divisibility_profile(
        scenario.family,
        j0,
        t,
        list(grid),
        subject_dims=subject_dims,
        zero_tol=scenario.tolerances.division_zero,
    )


def profile_columns(profile: List[ProfilePoint]) -> Dict[str, np.ndarray]:
    return {
        "t_prime": np.array([p.t_prime for p in profile]),
        "max_abs_discrepancy": np.array([p.max_abs_discrepancy for p in profile]),
    }


# =============================================================================
# PROCESSO DE MEDIÇÃO
# =============================================================================

def measurement_scenario(scenario: Scenario) -> MeasurementScenario:
    """
    Sujeito-aparelho-ambiente a partir do primeiro evento de medição.

    Antes de t′ o sujeito evolui com a família do cenário; depois, com a
    evolução relativa U(t′ + s)U†(t′). Dimensões e mapas ausentes usam um
    rótulo por resultado.
    """
    events = [e for e in scenario.spec.events if isinstance(e, schemas.MeasurementEventSpec)]
    if not events:
        raise ScenarioError(f"{scenario.source}:events", "measure needs a measurement event")
    if scenario.initial_configuration is None:
        raise ScenarioError(f"{scenario.source}:initial", "measure needs an initial configuration")
    event = events[0]
    tol = scenario.tolerances
    observable = spectral_decompose(to_array(event.observable), tol.degeneracy)
    outcomes = range(observable.outcome_count)
    return MeasurementScenario(
        observable=observable,
        device_dim=event.device_dim or observable.outcome_count,
        environment_dim=event.environment_dim or observable.outcome_count,
        d_of=tuple(event.d_of) if event.d_of is not None else tuple(outcomes),
        e_of=tuple(event.e_of) if event.e_of is not None else tuple(outcomes),
        pre_unitary=evaluate(scenario.family, event.time, tol.structural),
        initial_configuration=scenario.initial_configuration,
        t_prime=event.time,
        post_subject=RelativeFamily(scenario.family, event.time),
        tol=tol.structural,
    )


@log_duration("measure")
def run_measurement_scenario(scenario: Scenario, t: Optional[float] = None) -> MeasurementRun:
    """Executa o processo de medição em t (padrão: o próprio t′) e colapsa cada resultado."""
    s = measurement_scenario(scenario)
    t = s.t_prime if t is None else float(t)
    result = run_measurement(s, t, scenario.tolerances.structural)
    outcomes = range(s.observable.outcome_count)
    return MeasurementRun(
        scenario=s,
        result=result,
        collapsed=[collapse(s, alpha, t) for alpha in outcomes],
        repeat_probabilities=[repeat_probability(s, alpha) for alpha in outcomes],
    )
