"""
Summation - partial sums, exact Pade approximants and divergence diagnostics
"""

from .diagnostics import SeriesDiagnostics, diagnostics, partial_sums
from .pade import PadeApproximant, pade, pade_from_coefficients, pade_table

__all__ = [
    "PadeApproximant",
    "SeriesDiagnostics",
    "diagnostics",
    "pade",
    "pade_from_coefficients",
    "pade_table",
    "partial_sums",
]
