"""Output services layer."""

from .exporter import ResultExporter

__all__ = ["ResultExporter"]
