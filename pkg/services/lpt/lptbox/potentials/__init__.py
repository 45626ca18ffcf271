"""
Potentials - exact series coefficients and closed forms for screened Coulomb potentials
"""

from .bernoulli import bernoulli_numbers
from .screened import evaluate_closed_form, evaluate_closed_form_grid, series_value, taylor_coefficients

__all__ = [
    "bernoulli_numbers",
    "evaluate_closed_form",
    "evaluate_closed_form_grid",
    "series_value",
    "taylor_coefficients",
]
