"""
Exportador de resultados para CSV, fixtures de matriz, Markdown e console.
"""

from pathlib import Path
from typing import Dict, List, Optional, Union

import numpy as np
import pandas as pd
from jinja2 import Template
from tabulate import tabulate

from core.fixtures import write_matrices
from core.types import CheckResult
from orchestrator.simulator import MeasurementRecord, MeasurementRun, QueryResult
from orchestrator.verifier import VerificationReport
from stochastic.stochastic_model import ProbabilityVector

# Tabelas cuja coluna indicada precisa ser uma distribuição
DISTRIBUTION_TABLES = {
    ("index", "value"): "value",
    ("outcome", "eigenvalue", "probability"): "probability",
}

REPORT_TEMPLATE = """# Verification report: {{ report.scenario }}

**Source:** `{{ report.source }}`
**Started:** {{ report.started_at.strftime("%Y-%m-%d %H:%M:%S") }}
**Status:** {{ "PASSED" if report.passed else "FAILED" }}

| Check | Status | Residual | Tolerance | Detail |
|-------|--------|----------|-----------|--------|
{% for check in report.checks -%}
| {{ check.name }} | {{ check.status.value }} | {{ "%.3e"|format(check.residual) }} | {{ "%.1e"|format(check.tolerance) }} | {{ check.detail or "" }} |
{% endfor %}
{% if report.summary %}
## Summary

- checks: {{ report.summary.checks_total }}
- passed: {{ report.summary.checks_passed }}
- failed: {{ report.summary.checks_failed }}
{% if report.summary.worst_residual is not none -%}
- worst residual: {{ "%.3e"|format(report.summary.worst_residual) }}
{% endif %}
{% endif %}
"""


class ResultExporter:
    """Escreve as saídas da CLI de forma determinística."""

    @staticmethod
    def frame(columns: Dict[str, np.ndarray]) -> pd.DataFrame:
        return pd.DataFrame({name: np.asarray(values) for name, values in columns.items()})

    @staticmethod
    def validate_columns(columns: Dict[str, np.ndarray], tol: float) -> None:
        """Colunas de probabilidade precisam formar uma distribuição."""
        name = DISTRIBUTION_TABLES.get(tuple(columns))
        if name is not None:
            ProbabilityVector(np.asarray(columns[name], dtype=float), tol=tol)

    @staticmethod
    def write_csv(frame: pd.DataFrame, path: Union[str, Path], float_format: str = "%.17g") -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False, float_format=float_format, lineterminator="\n")
        return path

    @staticmethod
    def write_columns(
        columns: Dict[str, np.ndarray],
        path: Union[str, Path],
        float_format: str = "%.17g",
        tol: float = 1e-10,
    ) -> Path:
        ResultExporter.validate_columns(columns, tol)
        return ResultExporter.write_csv(ResultExporter.frame(columns), path, float_format)

    @staticmethod
    def write_query(
        result: QueryResult,
        out_dir: Union[str, Path],
        scenario: str,
        float_format: str = "%.17g",
        tol: float = 1e-10,
    ) -> Path:
        """<cenário>_<rótulo>.csv, ou .txt no formato de fixture para densidades."""
        stem = Path(out_dir) / f"{scenario}_{result.label}"
        if result.matrix is not None:
            return write_matrices(
                stem.with_suffix(".txt"),
                [result.matrix],
                header=f"density matrix of {scenario} at t={result.time!r}",
            )
        return ResultExporter.write_columns(result.columns, stem.with_suffix(".csv"), float_format, tol)

    @staticmethod
    def measurement_columns(records: List[MeasurementRecord]) -> Dict[str, np.ndarray]:
        columns: Dict[str, list] = {"time": [], "outcome": [], "eigenvalue": [], "probability": []}
        for record in records:
            for alpha, (value, p) in enumerate(zip(record.observable.eigenvalues, record.probabilities.entries)):
                columns["time"].append(record.time)
                columns["outcome"].append(alpha)
                columns["eigenvalue"].append(value)
                columns["probability"].append(p)
        return {name: np.array(values) for name, values in columns.items()}

    @staticmethod
    def write_measurement_run(
        run: MeasurementRun,
        out_dir: Union[str, Path],
        scenario: str,
        float_format: str = "%.17g",
        tol: float = 1e-10,
    ) -> List[Path]:
        """Probabilidades do aparelho (CSV), matriz híbrida e densidades colapsadas (fixtures)."""
        out_dir = Path(out_dir)
        observable = run.scenario.observable
        device = {
            "outcome": np.arange(observable.outcome_count),
            "eigenvalue": np.array(observable.eigenvalues),
            "probability": run.result.device_probs.entries,
        }
        return [
            ResultExporter.write_columns(device, out_dir / f"{scenario}_device_probs.csv", float_format, tol),
            write_matrices(
                out_dir / f"{scenario}_hybrid.txt",
                [run.result.hybrid_matrix],
                header=f"hybrid transition matrix at t={run.result.t!r}",
            ),
            write_matrices(
                out_dir / f"{scenario}_collapsed.txt",
                [state.density.rho for state in run.collapsed],
                header="collapsed densities, one per outcome",
            ),
        ]

    # =========================================================================
    # RELATÓRIO
    # =========================================================================

    @staticmethod
    def to_markdown(report: VerificationReport) -> str:
        return Template(REPORT_TEMPLATE).render(report=report)

    @staticmethod
    def to_table(checks: List[CheckResult]) -> str:
        rows = [
            [c.name, c.status.value, f"{c.residual:.3e}", f"{c.tolerance:.1e}", c.detail or ""]
            for c in checks
        ]
        return tabulate(rows, headers=["check", "status", "residual", "tolerance", "detail"], tablefmt="simple")

    @staticmethod
    def write_report(report: VerificationReport, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(ResultExporter.to_markdown(report))
        return path

    @staticmethod
    def unitary_header(n: int, gamma: int, residual: Optional[float] = None) -> str:
        header = f"Stinespring dilation of a {n}-operator Kraus set (side {n ** 3}, ancilla label {gamma})"
        if residual is not None:
            header += f"\nreproduction residual {residual:.3e}"
        return header
