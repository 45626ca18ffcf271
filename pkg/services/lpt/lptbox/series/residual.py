"""
Riccati residual - substitute the truncated series back into hbar C' + C^2 = RHS and
collect every monomial hbar^a r^b whose inputs all lie inside the computed cone
"""

from collections import defaultdict
from fractions import Fraction
from typing import Dict, Tuple

import structlog
from pydantic import BaseModel, ConfigDict, Field

from ..errors import ComputationError, DimensionMismatchError, InsufficientCoefficientsError
from ..models import PotentialSeries, QuantumState
from .models import EnergySeries, LaurentTable

logger = structlog.get_logger(__name__)

# (power of hbar, power of r) -> coefficient
Polynomial = Dict[Tuple[int, int], Fraction]


class ResidualReport(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    max_residual: Fraction = Field(..., description="Largest |coefficient| on the checked cone")
    checked: int = Field(..., description="Cone monomials compared")
    excluded: int = Field(..., description="Monomials touched by truncated data")


def _log_derivative_polynomial(table: LaurentTable) -> Polynomial:
    # C = hbar^-1 C_0 + sum_k hbar^(2k-1) r^(i-k) C[k][i]
    poly: Polynomial = {(-1, 0): table.c00}
    for k in range(1, table.order + 1):
        for i, value in enumerate(table.grid[k]):
            if value:
                poly[(2 * k - 1, i - k)] = value
    return poly


def _multiply(left: Polynomial, right: Polynomial) -> Polynomial:
    product: Polynomial = defaultdict(Fraction)
    for (h1, r1), a in left.items():
        for (h2, r2), b in right.items():
            product[(h1 + h2, r1 + r2)] += a * b
    return product


def _in_cone(monomial: Tuple[int, int], order: int) -> bool:
    hbar_power, r_power = monomial
    if hbar_power % 2:
        return False
    k = (hbar_power + 2) // 2
    i = r_power + k
    if k == 0:
        return i == 0
    return 1 <= k <= order and 0 <= i <= order


def riccati_residual(
    pot: PotentialSeries,
    state: QuantumState,
    table: LaurentTable,
    energies: EnergySeries,
) -> ResidualReport:
    order = table.order
    if energies.order != order:
        raise DimensionMismatchError(
            f"Laurent table has order {order} but the energy series has order {energies.order}"
        )
    if len(pot.coeffs) < order + 1:
        raise InsufficientCoefficientsError(required=order + 1, available=len(pot.coeffs))
    if table.state != state:
        raise ComputationError(f"table was built for {table.state.label()}, not {state.label()}")

    c_poly = _log_derivative_polynomial(table)
    residual = _multiply(c_poly, c_poly)

    # hbar C'
    for (hbar_power, r_power), value in c_poly.items():
        if r_power:
            residual[(hbar_power + 1, r_power - 1)] += r_power * value

    # - hbar^2 l(l+1) / r^2
    residual[(2, -2)] -= state.l * (state.l + 1)
    # - 2m V(r)
    for i in range(order + 1):
        residual[(0, i - 1)] -= 2 * pot.mass * pot.coeffs[i]
    # + 2m E
    for k, value in enumerate(energies.values):
        residual[(2 * k - 2, 0)] += 2 * pot.mass * value

    checked_positions = [(-2, 0)] + [
        (2 * k - 2, i - k) for k in range(1, order + 1) for i in range(order + 1)
    ]
    max_residual = max(abs(residual.get(position, Fraction(0))) for position in checked_positions)
    excluded = sum(1 for monomial in residual if not _in_cone(monomial, order))

    logger.debug(
        "Riccati residual",
        state=state.label(),
        order=order,
        checked=len(checked_positions),
        excluded=excluded,
        max_residual=str(max_residual),
    )
    return ResidualReport(max_residual=max_residual, checked=len(checked_positions), excluded=excluded)

