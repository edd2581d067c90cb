"""
Ponto de import dos módulos numéricos para logging.
Reexporta do módulo observability.
"""
from .observability import get_logger, log_duration, setup_logging

__all__ = [
    "get_logger",
    "log_duration",
    "setup_logging",
]
