"""
Exact Hulthen s-wave levels

    V(r) = -g lambda exp(-lambda r) / (1 - exp(-lambda r))
    E_n  = -(1/2m) (m g / N - N lambda / 2)^2,   N = n + 1

The level dissolves into the continuum once N lambda / 2 reaches m g / N.
"""

from fractions import Fraction
from typing import Union

import structlog

from ..errors import StateDissolvedError
from ..rational import parse_rational

logger = structlog.get_logger(__name__)

Number = Union[Fraction, int, str]


def hulthen_threshold(g: Number, m: Number, n: int) -> Fraction:
    """Screening parameter at which level n reaches E = 0"""
    multiplicity = n + 1
    return 2 * parse_rational(m) * parse_rational(g) / multiplicity ** 2


def hulthen_exact_s_wave(g: Number, lam: Number, m: Number, n: int) -> Fraction:
    if n < 0:
        raise ValueError("n must be non-negative")
    g, lam, m = parse_rational(g), parse_rational(lam), parse_rational(m)
    multiplicity = n + 1
    amplitude = m * g / multiplicity - multiplicity * lam / 2
    if amplitude < 0:
        raise StateDissolvedError(
            f"state dissolved: n={n} is unbound for lambda={lam} (threshold {hulthen_threshold(g, m, n)})"
        )
    energy = -amplitude * amplitude / (2 * m)
    logger.debug("Hulthen exact level", n=n, lam=str(lam), energy=str(energy))
    return energy
