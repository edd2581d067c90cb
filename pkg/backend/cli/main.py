"""
Interface de linha de comando.

Subcomandos: verify, simulate, interfere, dilate, measure. Códigos de saída:
0 sucesso, 1 verificação reprovada, 2 erro de uso ou de leitura do cenário.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np

from config import Settings, get_settings
from core.exceptions import CorrespondenceError, ScenarioError
from core.fixtures import read_matrices, write_matrices
from core.types import CheckResult
from dilation.stinespring import stinespring_dilate
from infrastructure.logging import get_logger, setup_logging
from infrastructure.observability import CheckMetrics, clear_context, new_run_id, set_context
from orchestrator.simulator import interference_profile, profile_columns, run_measurement_scenario, simulate
from orchestrator.verifier import VerificationReport, verify_scenario
from scenario.loader import load_scenario
from services.exporter import ResultExporter

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


# =============================================================================
# ARGUMENTOS
# =============================================================================

def _seed(value: str) -> int:
    seed = int(value)
    if not 0 <= seed < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed must lie in [0, 2^64), got {value}")
    return seed


def _positive(value: str) -> float:
    number = float(value)
    if not number > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return number


def _float_list(value: str) -> List[float]:
    try:
        return [float(item) for item in value.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got '{value}'")


def _grid(value: str) -> List[float]:
    """'início:fim:pontos' → grade uniforme com extremos incluídos."""
    try:
        start, stop, count = value.split(":")
        return list(np.linspace(float(start), float(stop), int(count)))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected start:stop:count, got '{value}'")


def build_parser(settings: Optional[Settings] = None) -> argparse.ArgumentParser:
    settings = settings or Settings()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=None, help="64-bit seed for randomized checks and sampling.")
    common.add_argument("--tol", type=_positive, default=None, help="Override structural and probability tolerances.")
    common.add_argument("--out", type=Path, default=None, help="Output directory.")
    common.add_argument("--format", choices=["csv"], default="csv", help="Output format.")
    common.add_argument("--log-level", default=None, choices=["DEBUG", "INFO", "WARNING", "ERROR"])

    parser = argparse.ArgumentParser(prog="correspondence", description=settings.APP_NAME)
    parser.add_argument("--version", action="version", version=f"{settings.APP_NAME} {settings.APP_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", parents=[common], help="Run the verification suite on a scenario.")
    verify.add_argument("scenario", help="Scenario file or preset name.")
    verify.set_defaults(handler=cmd_verify)

    sim = sub.add_parser("simulate", parents=[common], help="Run events and answer queries, one CSV per query.")
    sim.add_argument("scenario")
    sim.set_defaults(handler=cmd_simulate)

    interfere = sub.add_parser("interfere", parents=[common], help="Interference discrepancy over a t' grid.")
    interfere.add_argument("scenario")
    interfere.add_argument("--t", type=float, required=True, help="Final time t.")
    grid = interfere.add_mutually_exclusive_group(required=True)
    grid.add_argument("--t-primes", type=_float_list, help="Comma-separated t' values.")
    grid.add_argument("--grid", type=_grid, help="Uniform t' grid as start:stop:count.")
    interfere.add_argument("--j0", type=int, default=None, help="Initial configuration (zero-based).")
    interfere.set_defaults(handler=cmd_interfere)

    dilate = sub.add_parser("dilate", parents=[common], help="Stinespring dilation of a Kraus fixture.")
    dilate.add_argument("kraus", type=Path, help="Matrix fixture with N Kraus operators of side N.")
    dilate.add_argument("--gamma", type=int, default=0, help="Ancilla label (zero-based).")
    dilate.set_defaults(handler=cmd_dilate)

    measure = sub.add_parser("measure", parents=[common], help="Full measurement process of a scenario.")
    measure.add_argument("scenario")
    measure.add_argument("--t", type=float, default=None, help="Time after the measurement (default: t').")
    measure.set_defaults(handler=cmd_measure)
    return parser


def _out_dir(args: argparse.Namespace, settings: Settings) -> Path:
    return Path(args.out) if args.out is not None else Path(settings.OUTPUT_DIR)


def _load(args: argparse.Namespace, settings: Settings):
    scenario = load_scenario(args.scenario, settings=settings, tol=args.tol, seed=args.seed)
    set_context(scenario=scenario.name)
    return scenario


# =============================================================================
# SUBCOMANDOS
# =============================================================================

def cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    scenario = _load(args, settings)
    report = verify_scenario(scenario, CheckMetrics())
    path = ResultExporter.write_report(report, _out_dir(args, settings) / f"{scenario.name}_report.md")
    print(ResultExporter.to_table(report.checks))
    print(f"report: {path}")
    for check in report.failed:
        print(f"FAILED {check.name}: {check.detail}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_simulate(args: argparse.Namespace, settings: Settings) -> int:
    scenario = _load(args, settings)
    out_dir = _out_dir(args, settings)
    result = simulate(scenario)
    tol = scenario.tolerances.structural
    for query in result.queries:
        path = ResultExporter.write_query(query, out_dir, scenario.name, settings.CSV_FLOAT_FORMAT, tol)
        print(path)
    if result.measurements:
        columns = ResultExporter.measurement_columns(result.measurements)
        path = ResultExporter.write_columns(
            columns, out_dir / f"{scenario.name}_measurements.csv", settings.CSV_FLOAT_FORMAT, tol
        )
        print(path)
    return EXIT_OK


def cmd_interfere(args: argparse.Namespace, settings: Settings) -> int:
    scenario = _load(args, settings)
    if not scenario.has_family:
        raise ScenarioError(f"{scenario.source}:system", "interference needs a system with a unitary family")
    grid = args.t_primes if args.t_primes is not None else args.grid
    if not grid:
        raise ScenarioError("--t-primes", "the t' grid is empty")
    profile = interference_profile(scenario, args.t, grid, args.j0)
    path = ResultExporter.write_columns(
        profile_columns(profile),
        _out_dir(args, settings) / f"{scenario.name}_interference.csv",
        settings.CSV_FLOAT_FORMAT,
    )
    print(path)
    return EXIT_OK


def cmd_dilate(args: argparse.Namespace, settings: Settings) -> int:
    operators = read_matrices(args.kraus)
    n = operators[0].shape[0]
    set_context(scenario=args.kraus.stem)
    if n > settings.MAX_STINESPRING_DIM:
        raise ScenarioError(
            str(args.kraus),
            f"N={n} exceeds MAX_STINESPRING_DIM={settings.MAX_STINESPRING_DIM} (side N^3 = {n ** 3})",
        )
    tol = args.tol if args.tol is not None else settings.STRUCTURAL_TOL
    result = stinespring_dilate(operators, gamma=args.gamma, tol=tol, reject=settings.GRAM_SCHMIDT_REJECT)

    out_dir = _out_dir(args, settings)
    stem = args.kraus.stem
    unitary_path = write_matrices(
        out_dir / f"{stem}_stinespring.txt",
        [result.unitary_out],
        header=ResultExporter.unitary_header(n, args.gamma, result.reproduction_residual),
    )
    report = VerificationReport(
        scenario=stem,
        source=str(args.kraus),
        checks=[
            CheckResult.from_residual("stinespring-unitarity", result.unitarity_residual, tol, f"side {n ** 3}"),
            CheckResult.from_residual("stinespring-reproduction", result.reproduction_residual, tol, "sum_beta |K_beta,ij|^2"),
        ],
    )
    report_path = ResultExporter.write_report(report, out_dir / f"{stem}_dilation_report.md")
    print(ResultExporter.to_table(report.checks))
    print(unitary_path)
    print(report_path)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_measure(args: argparse.Namespace, settings: Settings) -> int:
    scenario = _load(args, settings)
    run = run_measurement_scenario(scenario, args.t)
    paths = ResultExporter.write_measurement_run(
        run,
        _out_dir(args, settings),
        scenario.name,
        settings.CSV_FLOAT_FORMAT,
        scenario.tolerances.structural,
    )
    for path in paths:
        print(path)
    return EXIT_OK


# =============================================================================
# ENTRADA
# =============================================================================

def main(argv: Optional[List[str]] = None) -> int:
    try:
        settings = get_settings()
    except ValueError as exc:
        print(f"error: invalid settings: {exc}", file=sys.stderr)
        return EXIT_USAGE

    parser = build_parser(settings)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    setup_logging(args.log_level or settings.LOG_LEVEL, settings.LOG_JSON)
    set_context(run_id=new_run_id(), command=args.command)
    try:
        return args.handler(args, settings)
    except ScenarioError as exc:
        logger.error("Scenario error", extra=exc.to_dict())
        print(f"error: {exc.message}", file=sys.stderr)
        return EXIT_USAGE
    except CorrespondenceError as exc:
        logger.error("Check failed", extra=exc.to_dict())
        print(f"failed: {exc.message}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    finally:
        clear_context()


if __name__ == "__main__":
    sys.exit(main())
