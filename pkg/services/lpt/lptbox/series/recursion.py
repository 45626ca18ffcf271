"""
Core series - order-by-order solution of the hbar^2 hierarchy of the Riccati equation

    hbar C' + C^2 = hbar^2 l(l+1)/r^2 + 2m V(r) - 2m E,   C = hbar U'/U

with C = hbar^-1 sum_k C_k(r) hbar^2k, E = hbar^-2 sum_k E_k hbar^2k and the
Laurent rows C_k(r) = r^-k sum_i C[k][i] r^i. At order k the coefficient of r^(i-k) reads

    2 C0 C[k][i] = -[(i-k+1) C[k-1][i] + sum_{j=1}^{k-1} sum_p C[j][p] C[k-j][i-p]
                     + 2m E_k delta(i,k) - l(l+1) delta(i,0) delta(k,2)]          (k >= 2)
    C0 C[1][i]   = m (V_i - E_1 delta(i,1))                                       (k == 1)

The argument principle around the origin turns the quantization condition into
residue constraints C[k][k-1] = N delta(k,1). E_k is the one unknown of row k; it is
fixed by the residue of row k+1 vanishing, which only involves rows 1..k.
"""

from fractions import Fraction
from typing import List, Optional, Tuple

import structlog

from ..errors import ComputationError, InsufficientCoefficientsError, LeadingOrderError, ResidueConditionError
from ..models import PotentialSeries, QuantumState
from .models import EnergySeries, LaurentTable

logger = structlog.get_logger(__name__)

Grid = List[List[Fraction]]


def leading_order(pot: PotentialSeries, state: QuantumState) -> Tuple[Fraction, Fraction]:
    """E_0 = -m V_0^2 / (2 N^2) and C_0 = -sqrt(-2 m E_0) = m V_0 / N"""
    if pot.mass <= 0:
        raise LeadingOrderError(f"mass must be positive, got {pot.mass}")
    v0 = pot.coeffs[0]
    if v0 >= 0:
        raise LeadingOrderError(f"no Coulomb-bound leading order: V_0 = {v0} is not negative")
    multiplicity = state.N
    e0 = -pot.mass * v0 * v0 / (2 * multiplicity * multiplicity)
    c00 = pot.mass * v0 / multiplicity
    return e0, c00


def _cross_terms(grid: Grid, k: int, i: int) -> Fraction:
    """sum_{j=1}^{k-1} sum_{p=0}^{i} C[j][p] C[k-j][i-p]"""
    total = Fraction(0)
    for j in range(1, k):
        row, partner = grid[j], grid[k - j]
        for p in range(i + 1):
            left = row[p]
            if left:
                right = partner[i - p]
                if right:
                    total += left * right
    return total


def residue_conditions(table: LaurentTable) -> List[Tuple[int, Fraction, int]]:
    """(k, C[k][k-1], expected) for every stored row k >= 1"""
    multiplicity = table.state.N
    return [
        (k, table.residue(k), multiplicity if k == 1 else 0)
        for k in range(1, table.order + 1)
    ]


def expand(
    pot: PotentialSeries, state: QuantumState, order: int
) -> Tuple[EnergySeries, LaurentTable]:
    if order < 0:
        raise ComputationError(f"expansion order must be non-negative, got {order}")
    if len(pot.coeffs) < order + 1:
        raise InsufficientCoefficientsError(required=order + 1, available=len(pot.coeffs))

    e0, c00 = leading_order(pot, state)
    mass = pot.mass
    multiplicity = state.N
    centrifugal = state.l * (state.l + 1)
    size = order + 1

    grid: Grid = [[Fraction(0)] * size for _ in range(size)]
    grid[0][0] = c00
    energies = [e0]
    pivot = -1 / (2 * c00)

    logger.debug("Expanding", state=state.label(), order=order, label=pot.label)

    for k in range(1, size):
        row = grid[k]
        if k == 1:
            scale = mass / c00
            for i in range(size):
                if i != 1:
                    row[i] = scale * pot.coeffs[i]
        else:
            previous = grid[k - 1]
            for i in range(size):
                if i == k:
                    continue
                rhs = (i - k + 1) * previous[i] + _cross_terms(grid, k, i)
                if k == 2 and i == 0:
                    rhs -= centrifugal
                row[i] = pivot * rhs

        # C[k][k] enters the order-(k+1) residue with weight 2N; the rest is already known
        row[k] = -_cross_terms(grid, k + 1, k) / (2 * multiplicity)

        if k == 1:
            energy = pot.coeffs[1] - c00 * row[1] / mass
        else:
            energy = -(grid[k - 1][k] + _cross_terms(grid, k, k) + 2 * c00 * row[k]) / (2 * mass)
        energies.append(energy)

    table = LaurentTable(state=state, grid=tuple(tuple(row) for row in grid), label=pot.label)
    series = EnergySeries(values=tuple(energies), state=state, label=pot.label)

    violations = [k for k, value, expected in residue_conditions(table) if value != expected]
    if order >= 1 and _cross_terms(grid, order + 1, order) != 0:
        violations.append(order + 1)
    if violations:
        logger.error("Residue condition violated", state=state.label(), orders=violations)
        raise ResidueConditionError(f"residue condition violated at orders {violations}")

    logger.info(
        "Series expanded",
        state=state.label(),
        order=order,
        label=pot.label,
        energy_sum=str(series.total()),
    )
    return series, table


def dependence_cone_check(
    pot: PotentialSeries,
    state: QuantumState,
    order: int,
    perturb_index: Optional[int] = None,
) -> bool:
    """
    True when E_0..E_order are unchanged by V[perturb_index] -> V[perturb_index] + 1.
    The default index order+1 checks that E_k depends only on V_0..V_k; the expansion
    runs deep enough for the perturbed coefficient to enter the table.
    """
    index = order + 1 if perturb_index is None else perturb_index
    depth = max(order, index)
    if len(pot.coeffs) < depth + 1:
        raise InsufficientCoefficientsError(required=depth + 1, available=len(pot.coeffs))

    baseline, _ = expand(pot, state, depth)
    shifted, _ = expand(pot.with_coefficient(index, pot.coeffs[index] + 1), state, depth)
    unchanged = baseline.values[: order + 1] == shifted.values[: order + 1]
    logger.debug("Dependence cone checked", state=state.label(), order=order, index=index, unchanged=unchanged)
    return unchanged
