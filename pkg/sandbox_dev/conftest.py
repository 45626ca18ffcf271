"""
Shared fixtures for the LPT Box test-suite
"""

import json
from fractions import Fraction
from typing import Any, Callable, Dict, List, Tuple

import pytest

from lptbox.cli import main
from lptbox.models import PotentialSeries, QuantumState, ScreenedPotentialSpec
from lptbox.potentials import taylor_coefficients

SCREENED_KINDS = ["yukawa", "hulthen", "exp-cosine"]


@pytest.fixture
def yukawa_tenth() -> ScreenedPotentialSpec:
    return ScreenedPotentialSpec(kind="yukawa", g=1, lam="1/10")


@pytest.fixture
def coulomb_series() -> Callable[[int], PotentialSeries]:
    def build(order: int, g: Fraction = Fraction(1), mass: Fraction = Fraction(1)) -> PotentialSeries:
        return taylor_coefficients(ScreenedPotentialSpec(kind="coulomb", g=g), count=order, mass=mass)

    return build


@pytest.fixture
def ground() -> QuantumState:
    return QuantumState(n=0, l=0)


@pytest.fixture
def run_cli(capsys) -> Callable[..., Tuple[int, str, str]]:
    """Run the command line in-process; returns (exit code, stdout, stderr)"""

    def run(*argv: str) -> Tuple[int, str, str]:
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run


@pytest.fixture
def write_job(tmp_path) -> Callable[[Dict[str, Any]], str]:
    def write(job: Dict[str, Any], name: str = "job.json") -> str:
        path = tmp_path / name
        path.write_text(json.dumps(job), encoding="utf-8")
        return str(path)

    return write


def all_states(max_sum: int) -> List[QuantumState]:
    return [QuantumState(n=n, l=total - n) for total in range(max_sum + 1) for n in range(total + 1)]
