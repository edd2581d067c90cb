"""Infrastructure layer - Observability."""

from .observability import (
    setup_logging,
    get_logger,
    log_duration,
    set_context,
    get_context,
    clear_context,
    new_run_id,
    CheckMetrics,
)

__all__ = [
    "setup_logging",
    "get_logger",
    "log_duration",
    "set_context",
    "get_context",
    "clear_context",
    "new_run_id",
    "CheckMetrics",
]
