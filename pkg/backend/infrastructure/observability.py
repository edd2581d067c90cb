"""
Observability - Logs estruturados e métricas de verificação

Features:
- Logs estruturados em JSON (stderr, para não misturar com CSV em stdout)
- Contexto de execução (run_id, comando, cenário) em todos os logs
- Medição de duração de operações longas
- Contagem de verificações aprovadas/reprovadas por execução
"""

import json
import logging
import sys
import time
import traceback
import uuid
from contextvars import ContextVar
from datetime import datetime, timezone
from functools import wraps
from typing import Any, Callable, Dict, Optional


# =============================================================================
# CONTEXT VARS
# =============================================================================

run_context: ContextVar[Dict[str, Any]] = ContextVar("run_context", default={})


def set_context(**kwargs):
    """Define contexto para a execução atual."""
    ctx = run_context.get().copy()
    ctx.update(kwargs)
    run_context.set(ctx)


def get_context() -> Dict[str, Any]:
    return run_context.get()


def clear_context():
    run_context.set({})


def new_run_id() -> str:
    return str(uuid.uuid4())[:8]


# =============================================================================
# STRUCTURED JSON LOGGER
# =============================================================================

_CONTEXT_KEYS = ("run_id", "command", "scenario")


class JSONFormatter(logging.Formatter):
    """
    Formatter que gera logs em JSON estruturado.

    Exemplo de output:
    {
        "timestamp": "2026-02-06T21:52:00.123Z",
        "level": "INFO",
        "logger": "dilation.stinespring",
        "message": "Stinespring dilation completed",
        "run_id": "abc123",
        "command": "dilate",
        "extra": {"n": 2, "residual": 1.1e-16}
    }
    """

    def format(self, record: logging.LogRecord) -> str:
        log_entry = {
            "timestamp": datetime.now(timezone.utc).isoformat().replace("+00:00", "Z"),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }

        ctx = get_context()
        for key in _CONTEXT_KEYS:
            if ctx.get(key) is not None:
                log_entry[key] = ctx[key]

        if hasattr(record, "extra") and record.extra:
            log_entry["extra"] = record.extra

        if record.exc_info:
            log_entry["exception"] = {
                "type": record.exc_info[0].__name__ if record.exc_info[0] else None,
                "message": str(record.exc_info[1]) if record.exc_info[1] else None,
                "traceback": traceback.format_exception(*record.exc_info),
            }

        return json.dumps(log_entry, default=str, ensure_ascii=False)


class RunLogger(logging.LoggerAdapter):
    """
    Logger adapter que agrupa os campos extras em ``record.extra``.

    Uso:
        logger = get_logger(__name__)
        logger.info("Dilation completed", extra={"n": 3})
    """

    def process(self, msg, kwargs):
        payload = dict(kwargs.pop("extra", None) or {})
        ctx = get_context()
        if ctx.get("run_id"):
            payload.setdefault("run_id", ctx["run_id"])
        kwargs["extra"] = {"extra": payload}
        return msg, kwargs


def setup_logging(level: str = "WARNING", json_format: bool = True):
    """
    Configura logging da CLI.

    Args:
        level: Nível de log (DEBUG, INFO, WARNING, ERROR)
        json_format: Se True, usa JSON. Se False, usa formato legível.
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(getattr(logging, level.upper()))

    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(getattr(logging, level.upper()))

    if json_format:
        handler.setFormatter(JSONFormatter())
    else:
        handler.setFormatter(logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s"))

    root_logger.addHandler(handler)


def get_logger(name: str) -> RunLogger:
    """
    Retorna logger com suporte ao contexto de execução.

    Uso:
        logger = get_logger(__name__)
        logger.info("Something happened", extra={"key": "value"})
    """
    return RunLogger(logging.getLogger(name), {})


def log_duration(operation: str) -> Callable:
    """Decorator que registra duration_ms da operação em DEBUG."""

    def decorator(func: Callable) -> Callable:
        logger = get_logger(func.__module__)

        @wraps(func)
        def wrapper(*args, **kwargs):
            start = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                duration_ms = (time.perf_counter() - start) * 1000
                logger.debug(
                    f"{operation} finished",
                    extra={"operation": operation, "duration_ms": round(duration_ms, 3)},
                )

        return wrapper

    return decorator


# =============================================================================
# METRICS COLLECTOR
# =============================================================================

class CheckMetrics:
    """Contadores em memória das verificações de uma execução."""

    def __init__(self):
        self._counters: Dict[str, int] = {"checks_total": 0, "checks_passed": 0, "checks_failed": 0}
        self._worst_residual: Optional[float] = None

    def record(self, passed: bool, residual: float) -> None:
        self._counters["checks_total"] += 1
        self._counters["checks_passed" if passed else "checks_failed"] += 1
        if self._worst_residual is None or residual > self._worst_residual:
            self._worst_residual = residual

    def get_summary(self) -> Dict[str, Any]:
        summary: Dict[str, Any] = dict(self._counters)
        summary["worst_residual"] = self._worst_residual
        return summary


__all__ = [
    "set_context",
    "get_context",
    "clear_context",
    "new_run_id",
    "setup_logging",
    "get_logger",
    "log_duration",
    "JSONFormatter",
    "RunLogger",
    "CheckMetrics",
]
