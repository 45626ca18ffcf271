"""
Core series - exact hbar^2 corrections E_k and Laurent coefficients C[k][i]
"""

from .evaluation import log_derivative_eval
from .models import EnergySeries, LaurentTable
from .recursion import dependence_cone_check, expand, leading_order, residue_conditions
from .residual import ResidualReport, riccati_residual

__all__ = [
    "EnergySeries",
    "LaurentTable",
    "ResidualReport",
    "dependence_cone_check",
    "expand",
    "leading_order",
    "log_derivative_eval",
    "residue_conditions",
    "riccati_residual",
]
