"""
Log-derivative evaluation - C(r) = sum_k C_k(r) at hbar = 1 from a Laurent table
"""

from fractions import Fraction
from typing import Optional, Union

from ..errors import ComputationError, DimensionMismatchError
from .models import LaurentTable


def log_derivative_eval(
    table: LaurentTable, r: Union[Fraction, int, float], order: Optional[int] = None
) -> Union[Fraction, float]:
    """Exact for rational r, double precision for float r"""
    depth = table.order if order is None else order
    if depth > table.order or depth < 0:
        raise DimensionMismatchError(f"order {depth} outside the table (order {table.order})")
    if r <= 0:
        raise ComputationError(f"log-derivative needs r > 0, got {r}")

    if isinstance(r, float):
        total = float(table.c00)
        for k in range(1, depth + 1):
            total += sum(float(value) * r ** (i - k) for i, value in enumerate(table.grid[k]) if value)
        return total

    point = Fraction(r)
    exact = table.c00
    for k in range(1, depth + 1):
        exact += sum((value * point ** (i - k) for i, value in enumerate(table.grid[k]) if value), Fraction(0))
    return exact
