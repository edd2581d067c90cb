"""Interferência e indivisibilidade."""

from .interference_model import InterferenceReport, ProfilePoint
from .analysis import relative_evolution, cross_terms, interference_report, divisibility_profile

__all__ = [
    "InterferenceReport",
    "ProfilePoint",
    "relative_evolution",
    "cross_terms",
    "interference_report",
    "divisibility_profile",
]
