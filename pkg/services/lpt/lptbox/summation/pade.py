"""
Pade resummation - exact rational [L/M] approximants of the energy series in hbar^2 at hbar = 1
"""

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import structlog
import sympy
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..errors import PadeOrderError, SingularPadeError
from ..models import Rational
from ..series.models import EnergySeries

logger = structlog.get_logger(__name__)

Number = Union[Fraction, int, float]


class PadeApproximant(BaseModel):
    """num(x)/den(x) with den(0) = 1; the energy estimate is the value at x = 1"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    L: int = Field(..., ge=0)
    M: int = Field(..., ge=0)
    numerator: Tuple[Rational, ...]
    denominator: Tuple[Rational, ...]
    source_order: int = Field(..., ge=0)

    @model_validator(mode="after")
    def consistent_degrees(self) -> "PadeApproximant":
        if self.L + self.M > self.source_order:
            raise ValueError(f"[{self.L}/{self.M}] needs order {self.L + self.M}, source has {self.source_order}")
        if len(self.numerator) != self.L + 1 or len(self.denominator) != self.M + 1:
            raise ValueError("coefficient counts must be L+1 and M+1")
        if self.denominator[0] != 1:
            raise ValueError("denominator must be normalized to a unit constant term")
        return self

    def evaluate(self, x: Number = 1) -> Number:
        num = sum((c * x ** j for j, c in enumerate(self.numerator)), Fraction(0))
        den = sum((c * x ** j for j, c in enumerate(self.denominator)), Fraction(0))
        if den == 0:
            raise SingularPadeError(f"[{self.L}/{self.M}] has a pole at x = {x}")
        if isinstance(x, float):
            return float(num) / float(den)
        return Fraction(num) / Fraction(den)

    def taylor(self, order: int) -> List[Fraction]:
        """First order+1 Taylor coefficients of num/den"""
        result: List[Fraction] = []
        for j in range(order + 1):
            value = self.numerator[j] if j <= self.L else Fraction(0)
            for s in range(1, min(j, self.M) + 1):
                value -= self.denominator[s] * result[j - s]
            result.append(value)
        return result


def _to_sympy(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def _to_fraction(value: sympy.Expr) -> Fraction:
    rational = sympy.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


def _denominator(coeffs: Sequence[Fraction], L: int, M: int) -> List[Fraction]:
    # sum_{s=1}^{M} q_s c_{L+1+r-s} = -c_{L+1+r},  r = 0..M-1
    if M == 0:
        return [Fraction(1)]

    def c(index: int) -> sympy.Rational:
        return _to_sympy(coeffs[index]) if index >= 0 else sympy.Integer(0)

    system = sympy.Matrix(M, M, lambda r, s: c(L + r - s))
    rhs = sympy.Matrix(M, 1, lambda r, _: -c(L + r + 1))
    try:
        solution, params = system.gauss_jordan_solve(rhs)
    except ValueError as exc:
        raise SingularPadeError(f"singular Pade system for [{L}/{M}]: inconsistent equations") from exc
    if params.shape[0]:
        # rank-deficient but consistent; fix the free parameters and let the
        # reproduction check decide whether the entry is usable
        solution = solution.subs({p: 0 for p in params})
    return [Fraction(1)] + [_to_fraction(entry) for entry in solution]


def pade_from_coefficients(coeffs: Sequence[Fraction], L: int, M: int) -> PadeApproximant:
    order = len(coeffs) - 1
    if L < 0 or M < 0:
        raise PadeOrderError(f"Pade degrees must be non-negative, got [{L}/{M}]")
    if L + M > order:
        raise PadeOrderError(f"[{L}/{M}] needs L+M <= {order}")

    coeffs = [Fraction(c) for c in coeffs]
    den = _denominator(coeffs, L, M)
    num = [
        sum((den[s] * coeffs[j - s] for s in range(min(j, M) + 1)), Fraction(0))
        for j in range(L + 1)
    ]
    approximant = PadeApproximant(
        L=L, M=M, numerator=tuple(num), denominator=tuple(den), source_order=order
    )
    if approximant.taylor(L + M) != coeffs[: L + M + 1]:
        raise SingularPadeError(f"singular Pade system for [{L}/{M}]: series is not reproduced")
    return approximant


def pade(series: EnergySeries, L: int, M: int) -> PadeApproximant:
    approximant = pade_from_coefficients(series.values, L, M)
    logger.debug(
        "Pade approximant",
        state=series.state.label(),
        L=L,
        M=M,
        estimate=str(approximant.evaluate()),
    )
    return approximant


def pade_table(series: EnergySeries, max_order: Optional[int] = None) -> Dict[Tuple[int, int], Optional[PadeApproximant]]:
    """Every [L/M] with L+M <= max_order; singular entries map to None"""
    top = series.order if max_order is None else min(max_order, series.order)
    table: Dict[Tuple[int, int], Optional[PadeApproximant]] = {}
    for total in range(top + 1):
        for M in range(total + 1):
            L = total - M
            try:
                table[(L, M)] = pade_from_coefficients(series.values, L, M)
            except SingularPadeError:
                table[(L, M)] = None
    singular = sum(1 for entry in table.values() if entry is None)
    logger.debug("Pade table", state=series.state.label(), entries=len(table), singular=singular)
    return table
