"""
Core series: leading order, the Laurent recursion, residue conditions, residual and dependence checks
"""

import math
import random
from fractions import Fraction

import pytest

from conftest import SCREENED_KINDS, all_states
from lptbox.errors import (
    ComputationError,
    DimensionMismatchError,
    InsufficientCoefficientsError,
    LeadingOrderError,
)
from lptbox.models import PotentialSeries, QuantumState, ScreenedPotentialSpec
from lptbox.oracle import hulthen_exact_s_wave
from lptbox.potentials import taylor_coefficients
from lptbox.series import (
    EnergySeries,
    LaurentTable,
    dependence_cone_check,
    expand,
    leading_order,
    log_derivative_eval,
    residue_conditions,
    riccati_residual,
)


def _series(kind: str, lam: Fraction, order: int, mass: Fraction = Fraction(1)) -> PotentialSeries:
    return taylor_coefficients(ScreenedPotentialSpec(kind=kind, g=1, lam=lam), count=order, mass=mass)


class TestLeadingOrder:
    def test_hydrogen_levels(self, coulomb_series):
        for state in all_states(4):
            e0, c00 = leading_order(coulomb_series(0), state)
            assert e0 == Fraction(-1, 2 * state.N ** 2)
            assert c00 == Fraction(-1, state.N)

    def test_mass_and_coupling_enter_quadratically(self, coulomb_series, ground):
        e0, c00 = leading_order(coulomb_series(0, g=Fraction(2), mass=Fraction(3)), ground)
        assert e0 == -6
        assert c00 == -6

    def test_repulsive_origin_is_rejected(self, ground):
        with pytest.raises(LeadingOrderError):
            leading_order(PotentialSeries(coeffs=(Fraction(1),)), ground)

    def test_zero_v0_is_rejected(self, ground):
        with pytest.raises(LeadingOrderError):
            leading_order(PotentialSeries(coeffs=(Fraction(0), Fraction(-1))), ground)


class TestExpand:
    def test_closed_form_base_cases(self):
        rng = random.Random(20241018)
        for _ in range(20):
            mass = Fraction(rng.randint(1, 9), rng.randint(1, 9))
            v0 = -Fraction(rng.randint(1, 9), rng.randint(1, 9))
            v1 = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            pot = PotentialSeries(mass=mass, coeffs=(v0, v1))
            for state in all_states(4):
                series, _ = expand(pot, state, 1)
                assert series.values[0] == -mass * v0 ** 2 / (2 * state.N ** 2)
                assert series.values[1] == v1

    def test_coulomb_series_terminates(self, coulomb_series):
        pot = coulomb_series(20)
        checked = 0
        for state in all_states(6):
            series, _ = expand(pot, state, 20)
            assert series.values[0] == Fraction(-1, 2 * state.N ** 2)
            for value in series.values[1:]:
                assert value == 0
                checked += 1
        assert checked >= 120

    def test_yukawa_regression(self, ground):
        series, _ = expand(_series("yukawa", Fraction(1, 10), 4), ground, 4)
        assert series.values == (
            Fraction(-1, 2),
            Fraction(1, 10),
            Fraction(-3, 400),
            Fraction(1, 2000),
            Fraction(-11, 160000),
        )

    def test_hulthen_s_wave_series_terminates(self):
        for n in (0, 1, 2):
            state = QuantumState(n=n, l=0)
            N = state.N
            for lam in (Fraction(1, 64), Fraction(1, 10), Fraction(1, 3)):
                series, _ = expand(_series("hulthen", lam, 8), state, 8)
                assert series.values[0] == Fraction(-1, 2 * N * N)
                assert series.values[1] == lam / 2
                assert series.values[2] == -N * N * lam * lam / 8
                assert all(value == 0 for value in series.values[3:])

    def test_hulthen_partial_sums_approach_exact_level(self):
        # below order 2 the truncation error must fall off at least like lambda^(K+1)
        lams = [Fraction(1, 64), Fraction(1, 32), Fraction(1, 16)]
        for n in (0, 1):
            state = QuantumState(n=n, l=0)
            for order in (0, 1):
                deviations = []
                for lam in lams:
                    series, _ = expand(_series("hulthen", lam, order), state, order)
                    exact = hulthen_exact_s_wave(1, lam, 1, n)
                    deviations.append(abs(float(series.total() - exact)))
                for small, large in zip(deviations, deviations[1:]):
                    exponent = math.log(large / small) / math.log(2)
                    assert exponent >= order + 0.8

    def test_screening_powers_pair_with_orders(self, ground):
        for kind in SCREENED_KINDS:
            unit, _ = expand(_series(kind, Fraction(1), 6), ground, 6)
            tenth, _ = expand(_series(kind, Fraction(1, 10), 6), ground, 6)
            for k, (a, b) in enumerate(zip(unit.values, tenth.values)):
                assert b == a / 10 ** k

    def test_length_scaling_identity(self):
        rng = random.Random(7)
        base = taylor_coefficients(
            ScreenedPotentialSpec(kind="yukawa", g="3/2", lam="2/7"), count=10, mass=Fraction(5, 4)
        )
        state = QuantumState(n=1, l=1)
        reference, _ = expand(base, state, 10)
        for _ in range(10):
            a = Fraction(rng.randint(1, 12), rng.randint(1, 12))
            scaled, _ = expand(base.rescaled(a), state, 10)
            assert scaled.values == tuple(a * a * value for value in reference.values)

    def test_residue_conditions_hold(self):
        _, table = expand(_series("exp-cosine", Fraction(1, 2), 6), QuantumState(n=2, l=1), 6)
        for k, value, expected in residue_conditions(table):
            assert value == expected
            assert expected == (4 if k == 1 else 0)

    def test_insufficient_coefficients(self, ground):
        pot = PotentialSeries(coeffs=(Fraction(-1), Fraction(1, 10)))
        with pytest.raises(InsufficientCoefficientsError) as excinfo:
            expand(pot, ground, 3)
        assert excinfo.value.required == 4
        assert excinfo.value.available == 2
        assert excinfo.value.exit_code == 2

    def test_negative_order(self, coulomb_series, ground):
        with pytest.raises(ComputationError):
            expand(coulomb_series(2), ground, -1)

    def test_order_zero(self, coulomb_series, ground):
        series, table = expand(coulomb_series(0), ground, 0)
        assert series.values == (Fraction(-1, 2),)
        assert table.order == 0


class TestRiccatiResidual:
    @pytest.mark.parametrize("kind", SCREENED_KINDS)
    @pytest.mark.parametrize("lam", [Fraction(1, 100), Fraction(1, 10), Fraction(1, 2)])
    def test_residual_vanishes_on_cone(self, kind, lam):
        pot = _series(kind, lam, 8)
        for state in (QuantumState(n=0, l=0), QuantumState(n=1, l=0), QuantumState(n=0, l=1), QuantumState(n=2, l=1)):
            series, table = expand(pot, state, 8)
            report = riccati_residual(pot, state, table, series)
            assert report.max_residual == 0
            assert report.checked == 1 + 8 * 9

    def test_coulomb_cone_size(self, coulomb_series, ground):
        pot = coulomb_series(10)
        series, table = expand(pot, ground, 10)
        report = riccati_residual(pot, ground, table, series)
        assert report.max_residual == 0
        assert report.checked == 111

    def test_wrong_energy_is_detected(self, ground):
        pot = _series("yukawa", Fraction(1, 10), 4)
        series, table = expand(pot, ground, 4)
        values = list(series.values)
        values[2] += Fraction(1, 1000)
        report = riccati_residual(pot, ground, table, EnergySeries(values=tuple(values), state=ground))
        assert report.max_residual == Fraction(2, 1000)

    def test_wrong_table_entry_is_detected(self, ground):
        pot = _series("yukawa", Fraction(1, 10), 4)
        series, table = expand(pot, ground, 4)
        grid = [list(row) for row in table.grid]
        grid[2][0] += 1
        corrupted = LaurentTable(state=ground, grid=tuple(tuple(row) for row in grid))
        report = riccati_residual(pot, ground, corrupted, series)
        assert report.max_residual == 2

    def test_order_mismatch(self, ground):
        pot = _series("yukawa", Fraction(1, 10), 4)
        series, table = expand(pot, ground, 4)
        shorter, _ = expand(pot, ground, 3)
        with pytest.raises(DimensionMismatchError):
            riccati_residual(pot, ground, table, shorter)

    def test_state_mismatch(self, ground):
        pot = _series("yukawa", Fraction(1, 10), 4)
        series, table = expand(pot, ground, 4)
        with pytest.raises(ComputationError):
            riccati_residual(pot, QuantumState(n=1, l=0), table, series)


class TestLogDerivative:
    def test_hydrogen_ground_state(self, coulomb_series, ground):
        _, table = expand(coulomb_series(4), ground, 4)
        # u = r exp(-r): u'/u = 1/r - 1
        assert log_derivative_eval(table, 2) == Fraction(-1, 2)
        assert log_derivative_eval(table, Fraction(1, 2)) == 1
        assert log_derivative_eval(table, 2.0) == pytest.approx(-0.5)

    def test_hydrogen_2p(self, coulomb_series):
        _, table = expand(coulomb_series(4), QuantumState(n=0, l=1), 4)
        # u = r^2 exp(-r/2): u'/u = 2/r - 1/2
        assert log_derivative_eval(table, 4) == 0
        assert log_derivative_eval(table, 1) == Fraction(3, 2)

    def test_truncated_order(self, coulomb_series, ground):
        _, table = expand(coulomb_series(4), ground, 4)
        assert log_derivative_eval(table, 2, order=0) == -1

    def test_invalid_arguments(self, coulomb_series, ground):
        _, table = expand(coulomb_series(2), ground, 2)
        with pytest.raises(ComputationError):
            log_derivative_eval(table, 0)
        with pytest.raises(DimensionMismatchError):
            log_derivative_eval(table, 1, order=3)


class TestDependenceCone:
    @pytest.mark.parametrize("kind", SCREENED_KINDS)
    def test_energies_ignore_higher_coefficients(self, kind, ground):
        pot = _series(kind, Fraction(1, 3), 9)
        for order in range(9):
            assert dependence_cone_check(pot, ground, order)

    @pytest.mark.parametrize("kind", SCREENED_KINDS)
    def test_last_coefficient_moves_last_energy(self, kind):
        pot = _series(kind, Fraction(1, 3), 8)
        state = QuantumState(n=1, l=0)
        for order in range(1, 9):
            assert not dependence_cone_check(pot, state, order, perturb_index=order)

    def test_needs_one_extra_coefficient(self, ground):
        with pytest.raises(InsufficientCoefficientsError):
            dependence_cone_check(_series("yukawa", Fraction(1, 3), 3), ground, 3)
