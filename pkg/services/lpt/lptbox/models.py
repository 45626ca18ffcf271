"""
Shared domain types - quantum numbers, screened potential descriptions, potential series
"""

from enum import Enum
from fractions import Fraction
from typing import Annotated, Any, Callable, Optional, Tuple

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, field_validator, model_validator

from .rational import parse_rational

Rational = Annotated[Fraction, BeforeValidator(parse_rational)]


class QuantumState(BaseModel):
    """Radial and orbital quantum numbers; N = n + l + 1 is the zero multiplicity at the origin"""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=0, description="Radial quantum number")
    l: int = Field(..., ge=0, description="Orbital quantum number")

    @property
    def N(self) -> int:
        return self.n + self.l + 1

    def label(self) -> str:
        return f"n={self.n},l={self.l}"


class PotentialKind(str, Enum):
    YUKAWA = "yukawa"
    HULTHEN = "hulthen"
    EXP_COSINE = "exp-cosine"
    COULOMB = "coulomb"
    CUSTOM = "custom"


# Debye-Hueckel screening has the Yukawa functional form
_KIND_ALIASES = {"debye-huckel": "yukawa", "debye-hueckel": "yukawa", "exp_cosine": "exp-cosine"}


class ScreenedPotentialSpec(BaseModel):
    """V(r) = f(lambda, r)/r for a named screening function, or an explicit coefficient list"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True, populate_by_name=True)

    kind: PotentialKind
    g: Rational = Field(default=Fraction(1), description="Coupling strength")
    lam: Rational = Field(default=Fraction(0), alias="lambda", description="Screening parameter")
    custom_coeffs: Optional[Tuple[Rational, ...]] = Field(default=None, description="V_0..V_I for kind=custom")
    evaluator: Optional[Callable[[Any], Any]] = Field(
        default=None, exclude=True, description="Closed-form V(r) attached to a custom series"
    )

    @field_validator("kind", mode="before")
    @classmethod
    def resolve_alias(cls, value: Any) -> Any:
        if isinstance(value, str):
            return _KIND_ALIASES.get(value.lower(), value.lower())
        return value

    @field_validator("g")
    @classmethod
    def positive_coupling(cls, value: Fraction) -> Fraction:
        if value <= 0:
            raise ValueError("coupling g must be positive")
        return value

    @field_validator("lam")
    @classmethod
    def non_negative_screening(cls, value: Fraction) -> Fraction:
        if value < 0:
            raise ValueError("screening parameter lambda must be non-negative")
        return value

    @model_validator(mode="after")
    def custom_needs_coefficients(self) -> "ScreenedPotentialSpec":
        if self.kind is PotentialKind.CUSTOM and not self.custom_coeffs:
            raise ValueError("kind 'custom' requires a non-empty coefficient list")
        return self

    def describe(self) -> str:
        if self.kind is PotentialKind.CUSTOM:
            return f"custom[{len(self.custom_coeffs or ())}]"
        if self.kind is PotentialKind.COULOMB:
            return f"coulomb(g={self.g})"
        return f"{self.kind.value}(g={self.g},lambda={self.lam})"


class PotentialSeries(BaseModel):
    """Mass and exact coefficients of V(r) = r^-1 * sum_i V_i r^i"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    mass: Rational = Field(default=Fraction(1), description="Particle mass m")
    coeffs: Tuple[Rational, ...] = Field(..., min_length=1, description="V_0..V_I")
    label: str = Field(default="", description="Provenance")
    spec: Optional[ScreenedPotentialSpec] = Field(default=None, description="Closed form, when one exists")

    @field_validator("mass")
    @classmethod
    def positive_mass(cls, value: Fraction) -> Fraction:
        if value <= 0:
            raise ValueError("mass must be positive")
        return value

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def with_coefficient(self, index: int, value: Fraction) -> "PotentialSeries":
        coeffs = list(self.coeffs)
        coeffs[index] = value
        return self.model_copy(update={"coeffs": tuple(coeffs), "label": f"{self.label}*"})

    def rescaled(self, factor: Fraction) -> "PotentialSeries":
        """Length rescaling r -> a*rho maps V_i to a^(i+1) V_i"""
        coeffs = tuple(factor ** (i + 1) * v for i, v in enumerate(self.coeffs))
        return self.model_copy(update={"coeffs": coeffs, "label": f"{self.label}@a={factor}", "spec": None})
