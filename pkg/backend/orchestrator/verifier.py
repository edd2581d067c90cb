"""
Suíte de verificação de um cenário.

Cada verificação produz um CheckResult com resíduo e tolerância; uma
verificação que levanta exceção é registrada como reprovada e a suíte segue
com as demais.
"""

from dataclasses import dataclass, field
from datetime import datetime
from typing import Callable, Dict, List, Optional

import numpy as np

from core.exceptions import CorrespondenceError, StochasticityError
from core.linalg import dagger, max_abs, random_hermitian, random_phases, random_unitary
from core.types import CheckResult, CheckStatus
from correspondence.correspondence_model import EvolutionOperator, PhaseMatrix, StateVector
from correspondence.dictionary import dictionary_routes, kraus_decomposition, kraus_from_evolution
from correspondence.gauge import build_frame, gauge_schur_hadamard, gauge_unitary
from dynamics.family_model import FamilyKind
from dynamics.generators import evaluate, hamiltonian_provider
from dynamics.integrators import integrate_schrodinger
from infrastructure.logging import get_logger, log_duration
from infrastructure.observability import CheckMetrics
from scenario.scenario_model import SampleKind, Scenario
from stochastic.sampling import make_rng
from stochastic.stochastic_model import ProbabilityVector, StochasticMatrix

logger = get_logger(__name__)


@dataclass
class VerificationReport:
    """Resultado da suíte para um cenário"""
    scenario: str
    source: str
    checks: List[CheckResult] = field(default_factory=list)
    started_at: datetime = field(default_factory=datetime.now)
    summary: Dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failed(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]


class ScenarioVerifier:
    """Executa as verificações do dicionário, estocasticidade, gauge e Kraus"""

    def __init__(self, scenario: Scenario, metrics: Optional[CheckMetrics] = None):
        self.scenario = scenario
        self.tol = scenario.tolerances
        self.metrics = metrics or CheckMetrics()
        self.report = VerificationReport(scenario=scenario.name, source=scenario.source)

    @log_duration("verify")
    def run(self) -> VerificationReport:
        if self.scenario.has_family:
            for t in self.scenario.spec.check_times:
                self._verify_family_time(float(t))
        for sample in self.scenario.samples:
            self._verify_sample(sample.time, sample.kind, sample.matrix)

        self.report.summary = self.metrics.get_summary()
        logger.info("Verification finished", extra=self.report.summary)
        return self.report

    # =========================================================================
    # REGISTRO
    # =========================================================================

    def _record(self, check: CheckResult) -> CheckResult:
        self.report.checks.append(check)
        if check.status != CheckStatus.SKIPPED:
            self.metrics.record(check.passed, check.residual)
        if not check.passed:
            logger.error("Check failed", extra=check.to_dict())
        return check

    def _guarded(self, name: str, tolerance: float, body: Callable[[], CheckResult]) -> CheckResult:
        try:
            return self._record(body())
        except StochasticityError as exc:
            residual = max(abs(exc.column_sum - 1.0), max(-exc.min_entry, 0.0))
            return self._record(
                CheckResult(
                    name=name,
                    status=CheckStatus.FAILED,
                    residual=residual,
                    tolerance=tolerance,
                    detail=exc.message,
                    extra={"column": exc.column},
                )
            )
        except CorrespondenceError as exc:
            return self._record(
                CheckResult(name=name, status=CheckStatus.FAILED, residual=float("inf"), tolerance=tolerance, detail=exc.message)
            )

    def _skip(self, name: str, reason: str) -> CheckResult:
        return self._record(CheckResult(name=name, status=CheckStatus.SKIPPED, detail=reason))

    # =========================================================================
    # VERIFICAÇÕES
    # =========================================================================

    def _verify_family_time(self, t: float) -> None:
        label = f"t={t:g}"
        family = self.scenario.family
        try:
            U = evaluate(family, t, self.tol.structural)
        except CorrespondenceError as exc:
            self._record(
                CheckResult(
                    name=f"evolution[{label}]",
                    status=CheckStatus.FAILED,
                    residual=float(getattr(exc, "residual", float("inf"))),
                    tolerance=self.tol.structural,
                    detail=exc.message,
                )
            )
            return
        theta = self._guarded_theta(label, U)
        if theta is None:
            return
        self._check_dictionary(label, theta)
        self._check_double_stochastic(label, theta)
        self._check_kraus(label, theta)
        self._check_gauge(label, theta)
        self._check_schrodinger(label, t)

    def _verify_sample(self, t: float, kind: SampleKind, matrix: np.ndarray) -> None:
        label = f"t={t:g}"
        if kind == SampleKind.GAMMA:
            self._check_stochastic(label, np.real(matrix))
            return
        theta = self._guarded_theta(label, matrix)
        if theta is None:
            return
        self._check_dictionary(label, theta)
        self._check_kraus(label, theta)
        self._check_gauge(label, theta)

    def _guarded_theta(self, label: str, matrix: np.ndarray) -> Optional[EvolutionOperator]:
        name = f"stochastic[{label}]"
        check = self._guarded(name, self.tol.probability, lambda: self._theta_check(name, matrix))
        if not check.passed:
            return None
        return EvolutionOperator(matrix, tol=self.tol.probability)

    def _theta_check(self, name: str, matrix: np.ndarray) -> CheckResult:
        theta = EvolutionOperator(matrix, tol=self.tol.probability)
        residual = float(np.max(np.abs(np.sum(np.abs(theta.theta) ** 2, axis=0) - 1.0)))
        return CheckResult.from_residual(name, residual, self.tol.probability, "column norms of Theta")

    def _check_stochastic(self, label: str, gamma: np.ndarray) -> CheckResult:
        name = f"stochastic[{label}]"

        def body() -> CheckResult:
            StochasticMatrix(gamma, tol=self.tol.probability)
            residual = float(np.max(np.abs(gamma.sum(axis=0) - 1.0)))
            return CheckResult.from_residual(name, residual, self.tol.probability, "column sums of Gamma")

        return self._guarded(name, self.tol.probability, body)

    def _check_dictionary(self, label: str, theta: EvolutionOperator) -> CheckResult:
        name = f"dictionary[{label}]"

        def body() -> CheckResult:
            _, _, residual = dictionary_routes(theta)
            return CheckResult.from_residual(name, residual, self.tol.probability, "|Theta_ij|^2 vs tr(Theta^† P_i Theta P_j)")

        return self._guarded(name, self.tol.probability, body)

    def _check_double_stochastic(self, label: str, theta: EvolutionOperator) -> CheckResult:
        name = f"doubly-stochastic[{label}]"

        def body() -> CheckResult:
            gamma = np.abs(theta.theta) ** 2
            residual = float(np.max(np.abs(gamma.sum(axis=1) - 1.0)))
            return CheckResult.from_residual(name, residual, self.tol.probability, "row sums of a unistochastic Gamma")

        return self._guarded(name, self.tol.probability, body)

    def _check_kraus(self, label: str, theta: EvolutionOperator) -> None:
        kraus_name = f"kraus-identity[{label}]"
        decomposition_name = f"kraus-decomposition[{label}]"

        def identity() -> CheckResult:
            residual = kraus_from_evolution(theta).identity_residual()
            return CheckResult.from_residual(kraus_name, residual, self.tol.probability, "sum K^† K = identity")

        def decomposition() -> CheckResult:
            gamma = kraus_decomposition(kraus_from_evolution(theta))
            residual = float(np.max(np.abs(gamma - np.abs(theta.theta) ** 2)))
            return CheckResult.from_residual(decomposition_name, residual, self.tol.probability, "Kraus decomposition vs dictionary")

        self._guarded(kraus_name, self.tol.probability, identity)
        self._guarded(decomposition_name, self.tol.probability, decomposition)

    def _check_gauge(self, label: str, theta: EvolutionOperator) -> CheckResult:
        name = f"gauge-invariance[{label}]"
        if self.scenario.seed is None:
            return self._skip(name, "no seed: randomized gauge check needs --seed or a scenario seed")

        def body() -> CheckResult:
            rng = make_rng(self.scenario.seed)
            n = theta.n
            gamma = np.abs(theta.theta) ** 2

            phased = gauge_schur_hadamard(theta, PhaseMatrix(random_phases((n, n), rng)))
            residual = float(np.max(np.abs(np.abs(phased.theta) ** 2 - gamma)))

            p0 = self.scenario.initial if self.scenario.initial.n == n else ProbabilityVector.uniform(n)
            frame = build_frame(theta, p0, observables=(random_hermitian(n, rng),))
            moved = gauge_unitary(frame, random_unitary(n, rng), random_unitary(n, rng), self.tol.structural)
            residual = max(
                residual,
                float(np.max(np.abs(moved.transition_matrix() - frame.transition_matrix()))),
                float(np.max(np.abs(moved.probabilities() - frame.probabilities()))),
                float(np.max(np.abs(np.subtract(moved.expectations(), frame.expectations())))),
            )
            return CheckResult.from_residual(name, residual, self.tol.probability, f"seed {self.scenario.seed}")

        return self._guarded(name, self.tol.probability, body)

    def _check_schrodinger(self, label: str, t: float) -> CheckResult:
        name = f"schrodinger[{label}]"
        family = self.scenario.family
        if family.kind == FamilyKind.DIVISION_EVENT:
            return self._skip(name, "family is undefined on (0, t')")
        dt, steps = self.scenario.finite_difference_dt, self.scenario.rk4_steps

        def body() -> CheckResult:
            start = max(0.0, float(family.domain[0]))
            psi0 = StateVector(np.sqrt(self.scenario.initial.entries), tol=self.tol.structural)
            integrated = integrate_schrodinger(
                hamiltonian_provider(family, dt),
                psi0,
                t,
                steps,
                hbar=family.hbar,
                t0=start,
                breakpoints=family.breakpoints,
            )
            relative = evaluate(family, t, self.tol.structural) @ dagger(evaluate(family, start, self.tol.structural))
            residual = max_abs(integrated.state.psi - relative @ psi0.psi)
            return CheckResult.from_residual(name, residual, self.tol.integration, f"RK4, {steps} steps, dt={dt:g}")

        return self._guarded(name, self.tol.integration, body)


def verify_scenario(scenario: Scenario, metrics: Optional[CheckMetrics] = None) -> VerificationReport:
    return ScenarioVerifier(scenario, metrics).run()
