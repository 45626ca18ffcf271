"""
Command-line front end - batch jobs over the series, summation and oracle modules

    lptbox series    --kind yukawa --g 1 --lambda 1/10 --count 4
    lptbox energies  --config job.json --table
    lptbox sum       --config job.json --pade 3,3
    lptbox validate  --config job.json --tol 1e-8

Results go to stdout (JSON or CSV), logs to stderr. Exit codes: 0 success,
1 configuration error, 2 computation error, 3 validation tolerance exceeded.
"""

import argparse
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import pandas as pd
import structlog
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from . import __version__
from .errors import ClosedFormUnavailableError, ConfigError, LPTError, SeriesTooShortError, ToleranceExceededError
from .logging_setup import configure_logging
from .models import PotentialKind, PotentialSeries, QuantumState, Rational, ScreenedPotentialSpec
from .oracle import hulthen_exact_s_wave, solve
from .potentials import taylor_coefficients
from .rational import parse_rational, render_decimal
from .series import EnergySeries, LaurentTable, expand
from .settings import get_settings
from .summation import diagnostics, pade, pade_table, partial_sums

logger = structlog.get_logger(__name__)

StateRows = Dict[str, List[Dict[str, Any]]]


# ---------------------------------------------------------------------------
# Job configuration
# ---------------------------------------------------------------------------


class PotentialConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    kind: str = Field(..., description="yukawa, hulthen, exp-cosine, coulomb or custom")
    g: Optional[Rational] = None
    lam: Optional[Rational] = Field(default=None, alias="lambda")
    coeffs: Optional[List[Rational]] = None

    def to_spec(self) -> ScreenedPotentialSpec:
        fields: Dict[str, Any] = {"kind": self.kind}
        if self.g is not None:
            fields["g"] = self.g
        if self.lam is not None:
            fields["lam"] = self.lam
        if self.coeffs is not None:
            fields["custom_coeffs"] = tuple(self.coeffs)
        return ScreenedPotentialSpec(**fields)


class JobConfig(BaseModel):
    """One batch job; JSON keys are exactly the field names (potential.lambda for the screening)"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    potential: PotentialConfig
    mass: Rational = Fraction(1)
    states: List[Tuple[int, int]] = Field(default_factory=lambda: [(0, 0)], min_length=1)
    order: int = Field(default=4, ge=0)
    pade: List[Tuple[int, int]] = Field(default_factory=list)
    validate_: bool = Field(default=False, alias="validate")
    tol: float = Field(default=1e-6, gt=0)

    @field_validator("mass")
    @classmethod
    def positive_mass(cls, value: Fraction) -> Fraction:
        if value <= 0:
            raise ValueError("mass must be positive")
        return value

    @field_validator("states")
    @classmethod
    def valid_states(cls, value: List[Tuple[int, int]]) -> List[Tuple[int, int]]:
        for n, l in value:
            if n < 0 or l < 0:
                raise ValueError(f"state ({n}, {l}) needs n >= 0 and l >= 0")
        return value

    @model_validator(mode="after")
    def potential_is_valid(self) -> "JobConfig":
        try:
            self.potential.to_spec()
        except ValidationError as exc:
            raise ValueError("; ".join(error["msg"] for error in exc.errors())) from None
        return self

    def spec(self) -> ScreenedPotentialSpec:
        return self.potential.to_spec()

    def quantum_states(self) -> List[QuantumState]:
        return [QuantumState(n=n, l=l) for n, l in self.states]


class RunOptions(BaseModel):
    """Presentation and execution knobs; flags and settings only, never part of the job file"""

    format: str = "json"
    digits: int = Field(default=12, ge=1, le=200)
    count: Optional[int] = Field(default=None, ge=0)
    table: bool = False
    workers: int = Field(default=1, ge=1)


class CommandResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    document: Dict[str, Any]
    frames: List[Tuple[str, pd.DataFrame]] = Field(default_factory=list)
    exit_code: int = 0


def _format_validation_error(exc: ValidationError) -> str:
    parts = []
    for error in exc.errors():
        location = ".".join(str(part) for part in error["loc"]) or "<root>"
        parts.append(f"{location}: {error['msg']}")
    return "; ".join(parts)


def load_job_config(path: Optional[str], overrides: Optional[Dict[str, Any]] = None) -> JobConfig:
    """Read the JSON job file (if any) and overlay explicit flag values"""
    raw: Dict[str, Any] = {}
    if path:
        try:
            with open(path, "r", encoding="utf-8") as handle:
                raw = json.load(handle)
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
        if not isinstance(raw, dict):
            raise ConfigError(f"{path}: top level must be a JSON object")

    overrides = overrides or {}
    potential_overrides = overrides.pop("potential", {})
    if potential_overrides:
        potential = dict(raw.get("potential") or {})
        if "kind" in potential_overrides and potential_overrides["kind"] != potential.get("kind"):
            # a different kind on the command line starts a fresh potential block
            potential = {}
        potential.update(potential_overrides)
        raw["potential"] = potential
    raw.update(overrides)

    try:
        return JobConfig.model_validate(raw)
    except ValidationError as exc:
        raise ConfigError(f"invalid job configuration: {_format_validation_error(exc)}") from None


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def rational_entry(value: Fraction, digits: int) -> Dict[str, str]:
    return {"rational": str(value), "decimal": render_decimal(value, digits)}


def _error_entry(exc: Exception) -> Dict[str, str]:
    detail = exc.detail if isinstance(exc, LPTError) else str(exc)
    return {"type": type(exc).__name__, "detail": detail}


def _spec_document(spec: ScreenedPotentialSpec, mass: Fraction) -> Dict[str, Any]:
    document: Dict[str, Any] = {"kind": spec.kind.value, "mass": str(mass)}
    if spec.kind is PotentialKind.CUSTOM:
        document["coeffs"] = [str(v) for v in spec.custom_coeffs or ()]
    else:
        document["g"] = str(spec.g)
        if spec.kind is not PotentialKind.COULOMB:
            document["lambda"] = str(spec.lam)
    return document


def energy_series_to_document(series: EnergySeries, digits: int) -> Dict[str, Any]:
    return {
        "n": series.state.n,
        "l": series.state.l,
        "label": series.label,
        "energies": [dict(k=k, **rational_entry(value, digits)) for k, value in enumerate(series.values)],
        "sum": rational_entry(series.total(), digits),
    }


def energy_series_from_document(document: Dict[str, Any]) -> EnergySeries:
    entries = sorted(document["energies"], key=lambda entry: entry["k"])
    if [entry["k"] for entry in entries] != list(range(len(entries))):
        raise ConfigError("energy entries must cover k = 0..K without gaps")
    return EnergySeries(
        values=tuple(parse_rational(entry["rational"]) for entry in entries),
        state=QuantumState(n=document["n"], l=document["l"]),
        label=document.get("label", ""),
    )


def _laurent_document(table: LaurentTable) -> List[List[str]]:
    return [[str(value) for value in row] for row in table.grid]


def _rational_row(value: Fraction, digits: int) -> Dict[str, Any]:
    return {"numerator": value.numerator, "denominator": value.denominator, "decimal": render_decimal(value, digits)}


def _render_csv(frames: Sequence[Tuple[str, pd.DataFrame]]) -> str:
    buffer = io.StringIO()
    for index, (name, frame) in enumerate(frames):
        if len(frames) > 1:
            if index:
                buffer.write("\n")
            buffer.write(f"# {name}\n")
        frame.to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def render(result: CommandResult, output_format: str) -> str:
    if output_format == "csv":
        return _render_csv(result.frames)
    return json.dumps(result.document, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _map_states(
    worker: Callable[[QuantumState], Tuple[Dict[str, Any], StateRows, int]],
    states: Sequence[QuantumState],
    workers: int,
) -> List[Tuple[Dict[str, Any], StateRows, int]]:
    """Per-state results in input order; a failing state never aborts the others"""

    def guarded(state: QuantumState) -> Tuple[Dict[str, Any], StateRows, int]:
        try:
            return worker(state)
        except LPTError as exc:
            logger.warning("State failed", state=state.label(), error=exc.detail)
            entry = {"n": state.n, "l": state.l, "error": _error_entry(exc)}
            return entry, {"errors": [{"n": state.n, "l": state.l, **_error_entry(exc)}]}, exc.exit_code

    if workers > 1 and len(states) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(guarded, states))
    return [guarded(state) for state in states]


def _collect(
    results: List[Tuple[Dict[str, Any], StateRows, int]], frame_names: Sequence[str]
) -> Tuple[List[Dict[str, Any]], List[Tuple[str, pd.DataFrame]], int]:
    documents = [document for document, _, _ in results]
    exit_code = max((code for _, _, code in results), default=0)
    frames = []
    for name in list(frame_names) + ["errors"]:
        rows = [row for _, state_rows, _ in results for row in state_rows.get(name, [])]
        if rows or name in frame_names:
            frames.append((name, pd.DataFrame(rows)))
    return documents, frames, exit_code


def _potential_series(job: JobConfig, count: Optional[int]) -> PotentialSeries:
    return taylor_coefficients(job.spec(), count=count, mass=job.mass)


def cmd_series(job: JobConfig, options: RunOptions) -> CommandResult:
    spec = job.spec()
    count = options.count
    if count is None and spec.kind is not PotentialKind.CUSTOM:
        count = job.order
    series = _potential_series(job, count)

    coefficients = [dict(i=i, **rational_entry(value, options.digits)) for i, value in enumerate(series.coeffs)]
    frame = pd.DataFrame([dict(i=i, **_rational_row(value, options.digits)) for i, value in enumerate(series.coeffs)])
    document = {
        "command": "series",
        "potential": _spec_document(spec, job.mass),
        "coefficients": coefficients,
    }
    return CommandResult(document=document, frames=[("series", frame)])


def _energy_rows(series: EnergySeries, digits: int) -> List[Dict[str, Any]]:
    state = series.state
    return [dict(n=state.n, l=state.l, k=k, **_rational_row(value, digits)) for k, value in enumerate(series.values)]


def cmd_energies(job: JobConfig, options: RunOptions) -> CommandResult:
    pot = _potential_series(job, job.order)

    def run(state: QuantumState) -> Tuple[Dict[str, Any], StateRows, int]:
        series, table = expand(pot, state, job.order)
        document = energy_series_to_document(series, options.digits)
        rows: StateRows = {"energies": _energy_rows(series, options.digits)}
        if options.table:
            document["laurent"] = _laurent_document(table)
            rows["laurent"] = [
                dict(n=state.n, l=state.l, k=k, i=i, **_rational_row(value, options.digits))
                for k, row in enumerate(table.grid)
                for i, value in enumerate(row)
            ]
        return document, rows, 0

    names = ["energies", "laurent"] if options.table else ["energies"]
    documents, frames, exit_code = _collect(_map_states(run, job.quantum_states(), options.workers), names)
    document = {
        "command": "energies",
        "potential": _spec_document(job.spec(), job.mass),
        "order": job.order,
        "states": documents,
    }
    return CommandResult(document=document, frames=frames, exit_code=exit_code)


def _oracle_block(job: JobConfig, state: QuantumState) -> Dict[str, Any]:
    result = solve(job.spec(), job.mass, state)
    return {
        "energy": result.energy,
        "iterations": result.iterations,
        "residual": result.residual,
        "richardson_shift": result.richardson_shift,
    }


def cmd_sum(job: JobConfig, options: RunOptions) -> CommandResult:
    pot = _potential_series(job, job.order)
    digits = options.digits

    def run(state: QuantumState) -> Tuple[Dict[str, Any], StateRows, int]:
        series, _ = expand(pot, state, job.order)
        exit_code = 0
        rows: StateRows = {"partial_sums": [], "pade": [], "diagnostics": []}

        sums = partial_sums(series)
        rows["partial_sums"] = [dict(n=state.n, l=state.l, k=k, **_rational_row(s, digits)) for k, s in enumerate(sums)]

        if job.pade:
            requested: Dict[Tuple[int, int], Any] = {}
            for L, M in job.pade:
                try:
                    requested[(L, M)] = pade(series, L, M)
                except LPTError as exc:
                    logger.warning("Pade entry failed", state=state.label(), L=L, M=M, error=exc.detail)
                    requested[(L, M)] = exc
                    exit_code = max(exit_code, exc.exit_code)
        else:
            requested = dict(pade_table(series))

        pade_entries = []
        for (L, M), approximant in requested.items():
            entry: Dict[str, Any] = {"L": L, "M": M}
            row: Dict[str, Any] = {"n": state.n, "l": state.l, "L": L, "M": M}
            if approximant is None:
                entry["error"] = {"type": "SingularPadeError", "detail": f"singular Pade system for [{L}/{M}]"}
                row.update(numerator=None, denominator=None, decimal=None, error=entry["error"]["type"])
            elif isinstance(approximant, Exception):
                entry["error"] = _error_entry(approximant)
                row.update(numerator=None, denominator=None, decimal=None, error=entry["error"]["type"])
            else:
                try:
                    estimate = approximant.evaluate()
                except LPTError as exc:
                    entry["error"] = _error_entry(exc)
                    row.update(numerator=None, denominator=None, decimal=None, error=type(exc).__name__)
                else:
                    entry["estimate"] = rational_entry(estimate, digits)
                    entry["denominator"] = [str(q) for q in approximant.denominator]
                    row.update(
                        numerator=str(estimate.numerator),
                        denominator=str(estimate.denominator),
                        decimal=render_decimal(estimate, digits),
                        error=None,
                    )
            pade_entries.append(entry)
            rows["pade"].append(row)

        document: Dict[str, Any] = {
            "n": state.n,
            "l": state.l,
            "partial_sums": [rational_entry(s, digits) for s in sums],
            "pade": pade_entries,
        }

        try:
            report = diagnostics(series)
        except SeriesTooShortError as exc:
            document["diagnostics"] = {"error": _error_entry(exc)}
        else:
            document["diagnostics"] = {
                "ratios": [str(ratio) if ratio is not None else None for ratio in report.ratios],
                "zero_orders": report.zero_orders,
                "optimal_order": report.optimal_order,
                "optimal_sum": rational_entry(report.optimal_sum, digits),
                "divergent": report.divergent,
            }
            rows["diagnostics"].append(
                {
                    "n": state.n,
                    "l": state.l,
                    "optimal_order": report.optimal_order,
                    "divergent": report.divergent,
                    "zero_orders": " ".join(str(k) for k in report.zero_orders),
                }
            )

        if job.validate_:
            try:
                document["oracle"] = _oracle_block(job, state)
            except ClosedFormUnavailableError:
                document["oracle"] = {"validation": "unavailable"}
            except LPTError as exc:
                document["oracle"] = {"error": _error_entry(exc)}
                exit_code = max(exit_code, exc.exit_code)
        return document, rows, exit_code

    documents, frames, exit_code = _collect(
        _map_states(run, job.quantum_states(), options.workers), ["partial_sums", "pade", "diagnostics"]
    )
    document = {
        "command": "sum",
        "potential": _spec_document(job.spec(), job.mass),
        "order": job.order,
        "states": documents,
    }
    return CommandResult(document=document, frames=frames, exit_code=exit_code)


def _default_pade(job: JobConfig) -> Tuple[int, int]:
    if job.pade:
        return job.pade[0]
    return job.order // 2, job.order - job.order // 2


def cmd_validate(job: JobConfig, options: RunOptions) -> CommandResult:
    pot = _potential_series(job, job.order)
    spec = job.spec()
    L, M = _default_pade(job)
    digits = options.digits

    def run(state: QuantumState) -> Tuple[Dict[str, Any], StateRows, int]:
        document: Dict[str, Any] = {"n": state.n, "l": state.l, "L": L, "M": M}
        row: Dict[str, Any] = {"n": state.n, "l": state.l, "L": L, "M": M}

        series, _ = expand(pot, state, job.order)
        estimate = pade(series, L, M).evaluate()
        document["estimate"] = rational_entry(estimate, digits)
        row["estimate"] = render_decimal(estimate, digits)

        try:
            oracle = solve(spec, job.mass, state)
        except ClosedFormUnavailableError:
            document["validation"] = "unavailable"
            row.update(oracle=None, absolute_deviation=None, relative_deviation=None, within_tol=None, error=None)
            return document, {"validate": [row]}, 0

        absolute = abs(float(estimate) - oracle.energy)
        relative = absolute / abs(oracle.energy) if oracle.energy else absolute
        within = relative <= job.tol
        document.update(
            oracle=oracle.energy,
            absolute_deviation=absolute,
            relative_deviation=relative,
            within_tol=within,
        )
        if spec.kind is PotentialKind.HULTHEN and state.l == 0:
            document["exact"] = rational_entry(hulthen_exact_s_wave(spec.g, spec.lam, job.mass, state.n), digits)
        row.update(
            oracle=oracle.energy,
            absolute_deviation=absolute,
            relative_deviation=relative,
            within_tol=within,
            error=None,
        )

        exit_code = 0
        if not within:
            failure = ToleranceExceededError(
                f"{state.label()}: relative deviation {relative:.3e} exceeds tol {job.tol:.3e}"
            )
            logger.warning("Validation tolerance exceeded", state=state.label(), relative=relative, tol=job.tol)
            document["error"] = _error_entry(failure)
            row["error"] = type(failure).__name__
            exit_code = failure.exit_code
        return document, {"validate": [row]}, exit_code

    documents, frames, exit_code = _collect(_map_states(run, job.quantum_states(), options.workers), ["validate"])
    document = {
        "command": "validate",
        "potential": _spec_document(spec, job.mass),
        "order": job.order,
        "tol": job.tol,
        "states": documents,
    }
    return CommandResult(document=document, frames=frames, exit_code=exit_code)


COMMANDS: Dict[str, Callable[[JobConfig, RunOptions], CommandResult]] = {
    "series": cmd_series,
    "energies": cmd_energies,
    "sum": cmd_sum,
    "validate": cmd_validate,
}


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors become ConfigError (exit 1) instead of argparse's SystemExit(2)"""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise ConfigError(f"{self.prog}: {message}")


def _int_pair(value: str) -> Tuple[int, int]:
    try:
        first, second = (int(part) for part in value.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two comma-separated integers, got {value!r}") from None
    return first, second


def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON job file")
    common.add_argument("--kind", help="yukawa, debye-huckel, hulthen, exp-cosine, coulomb or custom")
    common.add_argument("--g", help="coupling strength as an integer or p/q")
    common.add_argument("--lambda", dest="lam", help="screening parameter as an integer or p/q")
    common.add_argument("--coeffs", help="comma-separated V_0,...,V_I for --kind custom (use --coeffs=-1,...)")
    common.add_argument("--mass", help="particle mass as an integer or p/q")
    common.add_argument("--state", action="append", type=_int_pair, metavar="N,L", help="repeatable")
    common.add_argument("--order", type=int, help="expansion order K")
    common.add_argument("--pade", action="append", type=_int_pair, metavar="L,M", help="repeatable")
    common.add_argument("--validate", action="store_true", default=None, help="add oracle values to sum")
    common.add_argument("--tol", type=float, help="relative tolerance for validate")
    common.add_argument("--output", choices=["json", "csv"], help="output format")
    common.add_argument("--decimal-digits", type=int, dest="decimal_digits", help="significant digits")
    common.add_argument("--workers", type=int, help="parallel states")

    parser = _ArgumentParser(prog="lptbox", description="Semiclassical perturbation series for screened Coulomb potentials")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    series = subparsers.add_parser("series", parents=[common], help="potential Taylor coefficients")
    series.add_argument("--count", type=int, help="highest coefficient index I")
    energies = subparsers.add_parser("energies", parents=[common], help="energy corrections E_0..E_K")
    energies.add_argument("--table", action="store_true", help="also emit the Laurent grid")
    subparsers.add_parser("sum", parents=[common], help="partial sums, Pade estimates, diagnostics")
    subparsers.add_parser("validate", parents=[common], help="compare resummed energies with the Numerov oracle")
    return parser


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    overrides: Dict[str, Any] = {}
    potential: Dict[str, Any] = {}
    for flag, key in (("kind", "kind"), ("g", "g"), ("lam", "lambda")):
        value = getattr(args, flag)
        if value is not None:
            potential[key] = value
    if args.coeffs is not None:
        potential["coeffs"] = [part.strip() for part in args.coeffs.split(",") if part.strip()]
    if potential:
        overrides["potential"] = potential
    if args.mass is not None:
        overrides["mass"] = args.mass
    if args.state:
        overrides["states"] = args.state
    if args.order is not None:
        overrides["order"] = args.order
    if args.pade:
        overrides["pade"] = args.pade
    if args.validate:
        overrides["validate"] = True
    if args.tol is not None:
        overrides["tol"] = args.tol
    return overrides


def _run_options(args: argparse.Namespace) -> RunOptions:
    settings = get_settings()
    try:
        return RunOptions(
            format=args.output or settings.output.format,
            digits=args.decimal_digits if args.decimal_digits is not None else settings.output.decimal_digits,
            count=getattr(args, "count", None),
            table=getattr(args, "table", False),
            workers=args.workers if args.workers is not None else settings.runtime.workers,
        )
    except ValidationError as exc:
        raise ConfigError(f"invalid option: {_format_validation_error(exc)}") from None


def main(argv: Optional[Sequence[str]] = None) -> int:
    settings = get_settings()
    configure_logging(settings.logging)

    try:
        args = build_parser().parse_args(argv)
        job = load_job_config(args.config, _overrides(args))
        options = _run_options(args)
        logger.info(
            "Job started",
            service=settings.service.name,
            version=settings.service.version,
            command=args.command,
            potential=job.spec().describe(),
            states=len(job.states),
        )
        result = COMMANDS[args.command](job, options)
    except LPTError as exc:
        logger.error("Job failed", error=exc.detail, exit_code=exc.exit_code)
        print(f"error: {exc.detail}", file=sys.stderr)
        return exc.exit_code

    sys.stdout.write(render(result, options.format))
    sys.stdout.flush()
    logger.info("Job finished", command=args.command, exit_code=result.exit_code)
    return result.exit_code
