"""
Summation: partial sums, exact Pade approximants and divergence diagnostics
"""

import math
from fractions import Fraction

import pytest

from lptbox.errors import PadeOrderError, SeriesTooShortError, SingularPadeError
from lptbox.models import QuantumState, ScreenedPotentialSpec
from lptbox.potentials import taylor_coefficients
from lptbox.series import EnergySeries, expand
from lptbox.summation import diagnostics, pade, pade_from_coefficients, pade_table, partial_sums

GEOMETRIC = EnergySeries(values=tuple(Fraction(1, 2 ** k) for k in range(6)))


def _yukawa_series(lam: str, order: int, state: QuantumState = QuantumState(n=0, l=0)) -> EnergySeries:
    pot = taylor_coefficients(ScreenedPotentialSpec(kind="yukawa", g=1, lam=lam), count=order)
    return expand(pot, state, order)[0]


def _coulomb_series(order: int) -> EnergySeries:
    pot = taylor_coefficients(ScreenedPotentialSpec(kind="coulomb"), count=order)
    return expand(pot, QuantumState(n=0, l=0), order)[0]


class TestPartialSums:
    def test_coulomb(self):
        assert partial_sums(_coulomb_series(5)) == [Fraction(-1, 2)] * 6

    def test_arithmetic(self):
        series = EnergySeries(values=(Fraction(-1, 2), Fraction(1, 10), Fraction(0)))
        assert partial_sums(series) == [Fraction(-1, 2), Fraction(-2, 5), Fraction(-2, 5)]

    def test_yukawa_regression(self):
        sums = partial_sums(_yukawa_series("1/10", 4))
        assert sums == [
            Fraction(-1, 2),
            Fraction(-2, 5),
            Fraction(-163, 400),
            Fraction(-407, 1000),
            Fraction(-65131, 160000),
        ]

    def test_yukawa_to_order_eight(self):
        series = _yukawa_series("1/10", 8)
        assert series.values[5:] == (
            Fraction(21, 1600000),
            Fraction(-29, 9600000),
            Fraction(757, 960000000),
            Fraction(-69433, 307200000000),
        )
        assert partial_sums(series)[4:] == [
            Fraction(-65131, 160000),
            Fraction(-651289, 1600000),
            Fraction(-3907763, 9600000),
            Fraction(-390775543, 960000000),
            Fraction(-125048243193, 307200000000),
        ]


class TestPade:
    def test_geometric_resummation(self):
        approximant = pade(GEOMETRIC, 0, 1)
        assert approximant.denominator == (Fraction(1), Fraction(-1, 2))
        assert approximant.numerator == (Fraction(1),)
        assert approximant.evaluate() == 2

    def test_coulomb_is_constant(self):
        series = _coulomb_series(6)
        for L in range(7):
            for M in range(7 - L):
                assert pade(series, L, M).evaluate() == Fraction(-1, 2)

    def test_diagonal_reproduces_series(self):
        series = _yukawa_series("1/10", 6)
        approximant = pade(series, 3, 3)
        assert approximant.taylor(6) == list(series.values)
        assert approximant.source_order == 6

    def test_zero_denominator_degree_is_partial_sum(self):
        series = _yukawa_series("1/5", 6)
        sums = partial_sums(series)
        for K in range(7):
            assert pade(series, K, 0).evaluate() == sums[K]

    def test_scaling_commutes_with_resummation(self):
        series = _yukawa_series("1/10", 6)
        a2 = Fraction(9, 4)
        assert pade(series.scaled(a2), 3, 3).evaluate() == a2 * pade(series, 3, 3).evaluate()

    def test_close_to_literature_value(self):
        # Yukawa 1s at lambda = 0.1: E = -0.40705803...
        estimate = pade(_yukawa_series("1/10", 6), 3, 3).evaluate()
        assert float(estimate) == pytest.approx(-0.40705803, abs=1e-6)

    def test_float_evaluation(self):
        assert pade(GEOMETRIC, 0, 1).evaluate(0.5) == pytest.approx(4.0 / 3.0)

    def test_singular_system(self):
        with pytest.raises(SingularPadeError):
            pade_from_coefficients([Fraction(1), Fraction(0), Fraction(1)], 1, 1)

    def test_order_limits(self):
        with pytest.raises(PadeOrderError):
            pade(GEOMETRIC, 3, 3)
        with pytest.raises(PadeOrderError):
            pade(GEOMETRIC, -1, 2)

    def test_table_marks_singular_entries(self):
        series = EnergySeries(values=(Fraction(1), Fraction(0), Fraction(1)))
        table = pade_table(series)
        assert len(table) == 6
        assert table[(1, 1)] is None
        assert table[(2, 0)].evaluate() == 2


class TestDiagnostics:
    def test_coulomb(self):
        report = diagnostics(_coulomb_series(5))
        assert report.ratios == [None] * 5
        assert report.zero_orders == [1, 2, 3, 4, 5]
        assert report.optimal_order is None
        assert report.optimal_sum == Fraction(-1, 2)
        assert not report.divergent

    def test_geometric(self):
        report = diagnostics(GEOMETRIC)
        assert report.ratios == [Fraction(1, 2)] * 5
        assert report.optimal_order == 5
        assert not report.divergent

    def test_factorial_growth_is_divergent(self):
        series = EnergySeries(values=tuple(Fraction(math.factorial(k)) for k in range(7)))
        report = diagnostics(series)
        assert report.divergent
        assert report.optimal_order == 1

    def test_strong_yukawa_screening_is_divergent(self):
        report = diagnostics(_yukawa_series("1/2", 20))
        assert report.divergent
        assert report.optimal_order == 5

    def test_run_length_is_configurable(self):
        series = EnergySeries(values=(Fraction(1), Fraction(1), Fraction(2), Fraction(6), Fraction(6)))
        assert not diagnostics(series).divergent
        assert diagnostics(series, divergence_run=2).divergent

    def test_short_series(self):
        with pytest.raises(SeriesTooShortError):
            diagnostics(EnergySeries(values=(Fraction(1), Fraction(2), Fraction(3))))
