"""
Series data model - energy corrections E_k and the Laurent grid C[k][i] of the log-derivative
"""

from fractions import Fraction
from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..models import QuantumState, Rational


class EnergySeries(BaseModel):
    """E = hbar^-2 * sum_k E_k hbar^2k; the physical energy at hbar = 1 is sum_k E_k"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: Tuple[Rational, ...] = Field(..., min_length=1, description="E_0..E_K")
    state: QuantumState = Field(default=QuantumState(n=0, l=0))
    label: str = Field(default="")

    @property
    def order(self) -> int:
        return len(self.values) - 1

    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def scaled(self, factor: Fraction) -> "EnergySeries":
        return self.model_copy(update={"values": tuple(factor * v for v in self.values)})


class LaurentTable(BaseModel):
    """
    Row k holds C_k(r) = r^-k * sum_i grid[k][i] r^i for k >= 1.
    Row 0 degenerates to the constant C_0 = grid[0][0]; its other slots stay zero.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    state: QuantumState
    grid: Tuple[Tuple[Rational, ...], ...] = Field(..., min_length=1)
    label: str = Field(default="")

    @model_validator(mode="after")
    def square_grid(self) -> "LaurentTable":
        size = len(self.grid)
        if any(len(row) != size for row in self.grid):
            raise ValueError(f"Laurent grid must be {size}x{size}")
        if self.grid[0][0] >= 0:
            raise ValueError("C_0 must be negative for a decaying bound state")
        return self

    @property
    def order(self) -> int:
        return len(self.grid) - 1

    @property
    def c00(self) -> Fraction:
        return self.grid[0][0]

    def residue(self, k: int) -> Fraction:
        """Coefficient of r^-1 in C_k(r)"""
        return self.grid[k][k - 1]

