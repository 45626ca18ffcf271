"""
Numerov oracle - direct floating-point eigenvalues of

    u'' = [2m (V(r) - E) + l(l+1)/r^2] u

on a uniform radial grid. Node-count bisection pins the requested radial quantum
number, then brentq zeroes the log-derivative mismatch between the outward and
inward solutions at the outer classical turning point. A second solve on the
refined grid (twice the steps) bounds the discretization error.
"""

import math
from fractions import Fraction
from typing import List, Optional, Tuple, Union

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.optimize import brentq

from ..errors import ClosedFormUnavailableError, GridTooCoarseError, NoBoundStateError, OracleError
from ..models import PotentialKind, QuantumState, ScreenedPotentialSpec
from ..potentials import evaluate_closed_form_grid, taylor_coefficients
from ..settings import OracleSettings, get_settings

logger = structlog.get_logger(__name__)

RESCALE_LIMIT = 1e100


class RadialGrid(BaseModel):
    model_config = ConfigDict(frozen=True)

    r_min: float = Field(..., gt=0)
    r_max: float = Field(..., gt=0)
    steps: int = Field(..., ge=1000)

    @model_validator(mode="after")
    def ordered(self) -> "RadialGrid":
        if self.r_min >= self.r_max:
            raise ValueError(f"r_min {self.r_min} must be below r_max {self.r_max}")
        return self

    @property
    def spacing(self) -> float:
        return (self.r_max - self.r_min) / self.steps

    def points(self) -> np.ndarray:
        return np.linspace(self.r_min, self.r_max, self.steps + 1)

    def refined(self) -> "RadialGrid":
        return self.model_copy(update={"steps": 2 * self.steps})

    @classmethod
    def default_for(
        cls,
        coupling: Union[Fraction, float],
        mass: Union[Fraction, float],
        state: QuantumState,
        settings: Optional[OracleSettings] = None,
    ) -> "RadialGrid":
        """Coulombic length scale N^2/(m g) times the configured factors"""
        settings = settings or get_settings().oracle
        scale = state.N ** 2 / (float(mass) * float(coupling))
        return cls(
            r_min=settings.r_min_factor * scale,
            r_max=settings.r_max_factor * scale,
            steps=settings.steps,
        )


class EigenResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    energy: float
    nodes_found: int
    iterations: int
    residual: float = Field(..., description="Log-derivative mismatch at the matching point")
    richardson_shift: Optional[float] = Field(default=None, description="E(2x steps) - E(steps)")
    grid: RadialGrid


class _RadialProblem:
    """Grid-sampled effective potential plus the Numerov sweeps for one (spec, m, state)"""

    def __init__(self, spec: ScreenedPotentialSpec, mass: float, state: QuantumState, grid: RadialGrid):
        self.state = state
        self.mass = mass
        self.grid = grid
        self.h = grid.spacing
        self.h2_12 = self.h * self.h / 12.0
        self.r = grid.points()

        centrifugal = state.l * (state.l + 1)
        self.base = 2.0 * mass * evaluate_closed_form_grid(spec, self.r) + centrifugal / self.r ** 2

        v0, v1 = _leading_coefficients(spec)
        self.a1 = mass * v0 / (state.l + 1)
        self.v0, self.v1 = v0, v1

        # first point where the centrifugal term no longer swamps the Numerov weight
        start = self.h * math.sqrt(centrifugal / 6.0)
        self.j0 = min(int(np.searchsorted(self.r, start)), grid.steps // 2)

    def weights(self, energy: float) -> List[float]:
        return (1.0 - self.h2_12 * (self.base - 2.0 * self.mass * energy)).tolist()

    def turning_index(self, energy: float) -> int:
        allowed = np.nonzero(self.base - 2.0 * self.mass * energy < 0)[0]
        last = int(allowed[-1]) if allowed.size else self.grid.steps // 2
        return int(np.clip(last, self.j0 + 2, self.grid.steps - 2))

    def _frobenius(self, r: float, energy: float) -> float:
        l = self.state.l
        a2 = (2.0 * self.mass * self.v0 * self.a1 + 2.0 * self.mass * (self.v1 - energy)) / (4 * l + 6)
        return r ** (l + 1) * (1.0 + self.a1 * r + a2 * r * r)

    def outward(self, energy: float, match: int = -1, w: Optional[List[float]] = None) -> Tuple[int, int, float]:
        """Nodes over the whole grid, nodes inside the matching point, and u[match-1]/u[match]"""
        w = w or self.weights(energy)
        j0 = self.j0
        prev = self._frobenius(float(self.r[j0]), energy)
        cur = self._frobenius(float(self.r[j0 + 1]), energy)
        nodes = 1 if prev * cur < 0 else 0
        inner_nodes = 0
        ratio = math.nan
        for j in range(j0 + 1, self.grid.steps):
            if j == match:
                ratio = prev / cur if cur else math.inf
                inner_nodes = nodes
            nxt = ((12.0 - 10.0 * w[j]) * cur - w[j - 1] * prev) / w[j + 1]
            if nxt * cur < 0:
                nodes += 1
            prev, cur = cur, nxt
            if abs(cur) > RESCALE_LIMIT:
                prev /= RESCALE_LIMIT
                cur /= RESCALE_LIMIT
        return nodes, inner_nodes, ratio

    def inward(self, energy: float, match: int, w: Optional[List[float]] = None) -> float:
        """u[match+1]/u[match] from a vanishing tail at r_max"""
        w = w or self.weights(energy)
        prev, cur = 0.0, 1.0
        for j in range(self.grid.steps - 1, match, -1):
            nxt = ((12.0 - 10.0 * w[j]) * cur - w[j + 1] * prev) / w[j - 1]
            prev, cur = cur, nxt
            if abs(cur) > RESCALE_LIMIT:
                prev /= RESCALE_LIMIT
                cur /= RESCALE_LIMIT
        return prev / cur if cur else math.inf

    def nodes(self, energy: float) -> int:
        return self.outward(energy)[0]

    def mismatch(self, energy: float, match: int) -> float:
        # zero when the glued solution satisfies the Numerov recurrence at the matching point
        w = self.weights(energy)
        _, _, out_ratio = self.outward(energy, match, w)
        in_ratio = self.inward(energy, match, w)
        return (12.0 - 10.0 * w[match] - w[match - 1] * out_ratio - w[match + 1] * in_ratio) / self.h


def _leading_coefficients(spec: ScreenedPotentialSpec) -> Tuple[float, float]:
    if spec.kind is PotentialKind.CUSTOM:
        coeffs = list(spec.custom_coeffs or ()) + [Fraction(0)]
        return float(coeffs[0]), float(coeffs[1])
    series = taylor_coefficients(spec, count=1)
    return float(series.coeffs[0]), float(series.coeffs[1])


def _window(problem: _RadialProblem, coupling: float, state: QuantumState, margin: float) -> Tuple[float, float]:
    """Energy bracket starting at the hydrogenic level of V_0, deepened while it still holds too many nodes"""
    mass = problem.mass
    lo = -mass * coupling ** 2 / (2.0 * state.N ** 2) * (1.0 + margin)
    # below the well bottom the solution cannot oscillate
    floor = float(np.min(problem.base)) / (2.0 * mass)
    while lo > floor and problem.nodes(lo) > state.n:
        lo = max(2.0 * lo, floor)
        logger.debug("Widening energy window", state=state.label(), lo=lo)
    return lo, 0.0


def _eigenvalue(
    problem: _RadialProblem,
    state: QuantumState,
    window: Tuple[float, float],
    tol: float,
    settings: OracleSettings,
) -> Tuple[float, int, float, int]:
    lo, hi = window
    if problem.nodes(lo) > state.n or problem.nodes(hi) <= state.n:
        raise NoBoundStateError(
            f"no bound state in bracket [{lo:.6g}, {hi:.6g}] for {state.label()}"
        )

    width = hi - lo
    iterations = 0
    while hi - lo > settings.narrow_fraction * width and iterations < settings.max_iterations:
        mid = 0.5 * (lo + hi)
        if problem.nodes(mid) <= state.n:
            lo = mid
        else:
            hi = mid
        iterations += 1

    match = problem.turning_index(0.5 * (lo + hi))
    f_lo = problem.mismatch(lo, match)
    f_hi = problem.mismatch(hi, match)

    if np.isfinite(f_lo) and np.isfinite(f_hi) and f_lo * f_hi < 0:
        energy, info = brentq(
            problem.mismatch,
            lo,
            hi,
            args=(match,),
            xtol=tol,
            maxiter=settings.max_iterations,
            full_output=True,
        )
        iterations += info.iterations
    else:
        logger.warning("Mismatch does not bracket, bisecting on nodes", state=state.label(), lo=lo, hi=hi)
        while hi - lo > tol and iterations < settings.max_iterations:
            mid = 0.5 * (lo + hi)
            if problem.nodes(mid) <= state.n:
                lo = mid
            else:
                hi = mid
            iterations += 1
        energy = 0.5 * (lo + hi)

    energy = float(energy)
    inner_nodes = problem.outward(energy, match)[1]
    return energy, iterations, abs(problem.mismatch(energy, match)), inner_nodes


def solve(
    spec: ScreenedPotentialSpec,
    m: Union[Fraction, float],
    state: QuantumState,
    grid: Optional[RadialGrid] = None,
    tol: Optional[float] = None,
    check_grid: bool = True,
) -> EigenResult:
    settings = get_settings().oracle
    tol = settings.tol if tol is None else tol
    if tol <= 0:
        raise ValueError("tol must be positive")
    if spec.kind is PotentialKind.CUSTOM and spec.evaluator is None:
        raise ClosedFormUnavailableError("validation unavailable: custom series without a closed form")

    mass = float(m)
    v0, _ = _leading_coefficients(spec)
    coupling = -v0
    if coupling <= 0:
        raise NoBoundStateError(f"potential is not attractive at the origin (V_0 = {v0})")

    grid = grid or RadialGrid.default_for(coupling, mass, state, settings)
    problem = _RadialProblem(spec, mass, state, grid)
    window = _window(problem, coupling, state, settings.window_margin)
    energy, iterations, residual, nodes_found = _eigenvalue(problem, state, window, tol, settings)
    if nodes_found != state.n:
        raise OracleError(f"converged to a state with {nodes_found} nodes, expected {state.n}")

    shift: Optional[float] = None
    if check_grid:
        fine = _RadialProblem(spec, mass, state, grid.refined())
        half = max(settings.narrow_fraction * (window[1] - window[0]), 1e3 * tol)
        narrow = (energy - half, min(energy + half, 0.0))
        try:
            fine_energy = _eigenvalue(fine, state, narrow, tol, settings)[0]
        except NoBoundStateError:
            fine_energy = _eigenvalue(fine, state, window, tol, settings)[0]
        shift = fine_energy - energy
        logger.debug("Richardson comparison", state=state.label(), energy=energy, shift=shift)
        if abs(shift) > settings.richardson_factor * tol:
            raise GridTooCoarseError(
                f"grid too coarse: doubling steps moved E by {shift:.3e} (> {settings.richardson_factor * tol:.3e})"
            )

    logger.info(
        "Oracle solved",
        potential=spec.describe(),
        state=state.label(),
        energy=energy,
        iterations=iterations,
        residual=residual,
    )
    return EigenResult(
        energy=energy,
        nodes_found=nodes_found,
        iterations=iterations,
        residual=residual,
        richardson_shift=shift,
        grid=grid,
    )
