"""
Bernoulli numbers - exact B_0..B_n from the binomial recurrence, convention B_1 = -1/2
"""

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import List, Tuple


@lru_cache(maxsize=8)
def _bernoulli_table(count: int) -> Tuple[Fraction, ...]:
    numbers: List[Fraction] = [Fraction(1)]
    for k in range(1, count + 1):
        # sum_{j=0}^{k} C(k+1, j) B_j = 0
        partial = sum((comb(k + 1, j) * numbers[j] for j in range(k)), Fraction(0))
        numbers.append(-partial / (k + 1))
    return tuple(numbers)


def bernoulli_numbers(count: int) -> List[Fraction]:
    if count < 0:
        raise ValueError("count must be >= 0")
    return list(_bernoulli_table(count))
