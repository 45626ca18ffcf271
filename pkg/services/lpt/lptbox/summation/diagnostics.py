"""
Convergence diagnostics - partial sums, coefficient ratios, optimal truncation, divergence flag
"""

from fractions import Fraction
from typing import List, Optional

import structlog
from pydantic import BaseModel, ConfigDict, Field

from ..errors import SeriesTooShortError
from ..models import Rational
from ..series.models import EnergySeries
from ..settings import get_settings

logger = structlog.get_logger(__name__)


class SeriesDiagnostics(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    ratios: List[Optional[Rational]] = Field(..., description="|E_{k+1}/E_k|, None when either term is zero")
    zero_orders: List[int] = Field(default_factory=list)
    optimal_order: Optional[int] = Field(default=None, description="Index of the smallest nonzero |E_k|, k >= 1")
    optimal_sum: Rational = Field(..., description="Partial sum truncated at optimal_order")
    divergent: bool = False


def partial_sums(series: EnergySeries) -> List[Fraction]:
    sums: List[Fraction] = []
    running = Fraction(0)
    for value in series.values:
        running += value
        sums.append(running)
    return sums


def diagnostics(series: EnergySeries, divergence_run: Optional[int] = None) -> SeriesDiagnostics:
    if series.order < 3:
        raise SeriesTooShortError(f"diagnostics need order >= 3, got {series.order}")
    run_length = get_settings().summation.divergence_run if divergence_run is None else divergence_run

    values = series.values
    zero_orders = [k for k, value in enumerate(values) if value == 0]
    ratios: List[Optional[Fraction]] = [
        abs(values[k + 1] / values[k]) if values[k] and values[k + 1] else None
        for k in range(series.order)
    ]

    divergent = False
    run = 0
    for previous, current in zip(ratios, ratios[1:]):
        if previous is not None and current is not None and current > previous:
            run += 1
            if run >= run_length:
                divergent = True
                break
        else:
            run = 0

    nonzero = [(abs(values[k]), k) for k in range(1, len(values)) if values[k]]
    optimal_order = min(nonzero)[1] if nonzero else None
    sums = partial_sums(series)
    optimal_sum = sums[optimal_order] if optimal_order is not None else sums[-1]

    report = SeriesDiagnostics(
        ratios=ratios,
        zero_orders=zero_orders,
        optimal_order=optimal_order,
        optimal_sum=optimal_sum,
        divergent=divergent,
    )
    logger.debug(
        "Series diagnostics",
        state=series.state.label(),
        optimal_order=optimal_order,
        divergent=divergent,
        zeros=len(zero_orders),
    )
    return report
