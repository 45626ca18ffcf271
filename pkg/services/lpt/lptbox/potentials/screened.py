"""
Screened Coulomb potentials - exact Taylor coefficients V_i of r V(r) and closed forms V(r)

    yukawa      V = -g exp(-lambda r) / r                  (Debye-Hueckel is the same form)
    hulthen     V = -g lambda exp(-lambda r) / (1 - exp(-lambda r))
    exp-cosine  V = -g exp(-lambda r) cos(lambda r) / r
    coulomb     V = -g / r

The screening parameter is folded into the coefficients: V_i carries lambda^i.
"""

import math
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np
import structlog

from ..errors import ClosedFormUnavailableError, CoefficientCapError, ComputationError, InsufficientCoefficientsError
from ..models import PotentialKind, PotentialSeries, ScreenedPotentialSpec
from ..settings import get_settings
from .bernoulli import bernoulli_numbers

logger = structlog.get_logger(__name__)


def _yukawa(spec: ScreenedPotentialSpec, count: int) -> List[Fraction]:
    return [-spec.g * (-spec.lam) ** i / math.factorial(i) for i in range(count + 1)]


def _hulthen(spec: ScreenedPotentialSpec, count: int) -> List[Fraction]:
    # r V(r) = -g x / (e^x - 1) with x = lambda r, the Bernoulli generating function
    return [
        -spec.g * b * spec.lam ** i / math.factorial(i)
        for i, b in enumerate(bernoulli_numbers(count))
    ]


def _exp_cosine(spec: ScreenedPotentialSpec, count: int) -> List[Fraction]:
    # Re[(-1 - 1j)^i] tracked as an exact Gaussian integer (re, im)
    coeffs = []
    re, im = 1, 0
    for i in range(count + 1):
        coeffs.append(-spec.g * re * spec.lam ** i / math.factorial(i))
        re, im = im - re, -re - im
    return coeffs


def _coulomb(spec: ScreenedPotentialSpec, count: int) -> List[Fraction]:
    return [-spec.g] + [Fraction(0)] * count


_GENERATORS = {
    PotentialKind.YUKAWA: _yukawa,
    PotentialKind.HULTHEN: _hulthen,
    PotentialKind.EXP_COSINE: _exp_cosine,
    PotentialKind.COULOMB: _coulomb,
}


def taylor_coefficients(
    spec: ScreenedPotentialSpec,
    count: Optional[int] = None,
    mass: Fraction = Fraction(1),
    cap: Optional[int] = None,
) -> PotentialSeries:
    """V_0..V_count as exact rationals; custom series are returned as given (truncated to count)"""
    cap = get_settings().series.coefficient_cap if cap is None else cap

    if spec.kind is PotentialKind.CUSTOM:
        available = list(spec.custom_coeffs or ())
        if count is None:
            count = len(available) - 1
        if count + 1 > len(available):
            raise InsufficientCoefficientsError(required=count + 1, available=len(available))
        coeffs = available[: count + 1]
    else:
        if count is None:
            raise ComputationError(f"coefficient count is required for kind '{spec.kind.value}'")
        if count < 0:
            raise ComputationError(f"coefficient count must be non-negative, got {count}")
        if count > cap:
            raise CoefficientCapError(f"coefficient count {count} exceeds the cap {cap}")
        coeffs = _GENERATORS[spec.kind](spec, count)

    logger.debug("Taylor coefficients", potential=spec.describe(), count=len(coeffs))
    return PotentialSeries(mass=mass, coeffs=tuple(coeffs), label=spec.describe(), spec=spec)


def _closed_form(spec: ScreenedPotentialSpec, r: np.ndarray) -> np.ndarray:
    g = float(spec.g)
    lam = float(spec.lam)
    if spec.kind is PotentialKind.CUSTOM:
        if spec.evaluator is None:
            raise ClosedFormUnavailableError("custom potential series have no closed form attached")
        return np.asarray(spec.evaluator(r), dtype=float)
    if spec.kind is PotentialKind.COULOMB or lam == 0.0:
        return -g / r
    if spec.kind is PotentialKind.YUKAWA:
        return -g * np.exp(-lam * r) / r
    if spec.kind is PotentialKind.EXP_COSINE:
        return -g * np.exp(-lam * r) * np.cos(lam * r) / r
    if spec.kind is PotentialKind.HULTHEN:
        x = lam * r
        threshold = get_settings().oracle.hulthen_series_threshold
        series_branch = -g / r + g * lam / 2.0 - g * lam * x / 12.0
        with np.errstate(divide="ignore", invalid="ignore"):
            closed = -g * lam / np.expm1(x)
        return np.where(x < threshold, series_branch, closed)
    raise ComputationError(f"unknown potential kind {spec.kind!r}")


def evaluate_closed_form(spec: ScreenedPotentialSpec, r: float) -> float:
    if r <= 0:
        raise ComputationError(f"potential needs r > 0, got {r}")
    return float(_closed_form(spec, np.asarray(float(r))))


def evaluate_closed_form_grid(spec: ScreenedPotentialSpec, r: np.ndarray) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ComputationError("potential grid must be strictly positive")
    return _closed_form(spec, r)


def series_value(series: PotentialSeries, r: float) -> float:
    """Truncated r^-1 sum_i V_i r^i in double precision"""
    coeffs: Sequence[float] = [float(v) for v in series.coeffs]
    return float(np.polynomial.polynomial.polyval(r, coeffs)) / r
