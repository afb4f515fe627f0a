import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import partition

from maex.asymptotics import (
    diff_report,
    eta_inversion_check,
    eta_prediction_log,
    exact_ratio,
    expectation,
    inverse_euler_product,
    predict_diff,
    predict_p,
    predict_sigmaL,
    sigmaL_report,
    trend_check,
)


class TestPredictions:
    @given(st.integers(1, 2000))
    def test_positive_finite(self, n):
        for f in (predict_p, predict_diff, predict_sigmaL):
            v = f(n)
            assert v > 0 and math.isfinite(v)

    def test_diff_is_hardy_ramanujan(self):
        assert all(predict_diff(n) == predict_p(n) for n in (1, 10, 500))

    def test_hardy_ramanujan_vs_sympy(self):
        # the leading term overshoots p(n) by O(1/sqrt n)
        assert abs(int(partition(2000)) / predict_p(2000) - 1) < 0.02

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            predict_sigmaL(0)

    def test_exact_ratio_huge(self):
        big = 10**400
        assert exact_ratio(big, 1e300) == pytest.approx(1e100)


class TestExpectation:
    def test_small(self):
        # largest parts of the 7 partitions of 5 sum to 20
        assert expectation(1) == expectation(2) == 1
        assert expectation(5) == Fraction(10, 7)

    def test_at_least_one(self, stats2000):
        assert all(stats2000.expectation(n) > 1 for n in range(3, 2001))


class TestTrends:
    def test_diff(self):
        assert trend_check("diff").passed

    def test_sigmaL(self):
        assert trend_check("sigmaL").passed

    def test_ratios_near_one(self):
        assert abs(diff_report(2000).ratio - 1) < 0.05
        assert abs(sigmaL_report(2000).ratio - 1) < 0.01

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            trend_check("p")

    def test_failure_reported(self):
        # equal errors are not strictly decreasing
        rep = trend_check("diff", [500, 500])
        assert not rep.passed and rep.first_failure


class TestEta:
    def test_against_partition_sum(self):
        t = 0.5
        direct = math.fsum(int(partition(n)) * math.exp(-n * t) for n in range(400))
        assert inverse_euler_product(t) == pytest.approx(math.log(direct), rel=1e-12)

    def test_prediction_log(self):
        t = 0.1
        assert eta_prediction_log(t) == pytest.approx(math.log(math.sqrt(t / (2 * math.pi)) * math.exp(math.pi**2 / (6 * t))))

    def test_default_grid(self):
        rep = eta_inversion_check()
        assert rep.passed
        assert float(rep.details["points"][-1]["ratio"]) == pytest.approx(1, abs=1e-3)

    @pytest.mark.parametrize("t", [0, 1, -0.1, 2])
    def test_out_of_range(self, t):
        with pytest.raises(ValueError):
            inverse_euler_product(t)

    @settings(max_examples=20)
    @given(st.floats(0.02, 0.9))
    def test_ratio_below_one(self, t):
        # the neglected factor e^{-t/24} keeps the ratio under 1
        r = math.exp(inverse_euler_product(t) - eta_prediction_log(t))
        assert r == pytest.approx(math.exp(-t / 24), rel=1e-9)
