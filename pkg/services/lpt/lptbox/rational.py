"""
Exact rational helpers - strict "p/q" parsing and deterministic decimal rendering
"""

import re
from decimal import ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction
from typing import Any

_RATIONAL_PATTERN = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(value: Any) -> Fraction:
    """Accept Fractions, ints and "p/q" / integer strings; floats are refused, never coerced"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"boolean is not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        # the unicode minus shows up when values are pasted from rendered documents
        match = _RATIONAL_PATTERN.match(value.replace("−", "-"))
        if match:
            numerator, denominator = match.groups()
            if denominator is not None and int(denominator) == 0:
                raise ValueError(f"zero denominator in {value!r}")
            return Fraction(int(numerator), int(denominator or 1))
    raise ValueError(f"expected an integer or 'p/q' string, got {value!r}")


def render_decimal(value: Fraction, digits: int) -> str:
    """Significant-digit rendering with round-half-even at the configured precision"""
    context = Context(prec=digits, rounding=ROUND_HALF_EVEN)
    return str(context.divide(Decimal(value.numerator), Decimal(value.denominator)))
