"""Lyapunov estimator tests against closed-form control systems."""

import math

import pytest

from zhangmap import InvalidInput, MapParams, lyapunov_curve, lyapunov_exponent
from zhangmap.lyapunov import grid_values, set_axis

LN2 = math.log(2.0)


def logistic(r):
    return MapParams(variant="logistic", r=r)


def zhang(alpha, c=100.0, **kw):
    return MapParams(variant="zhang1", beta=math.pi, c=c, alpha=alpha, **kw)


class TestLogisticOracles:
    def test_chaotic_r4(self):
        # the r = 4 logistic map has exact lambda = ln 2
        est = lyapunov_exponent(logistic(4.0), 0.3, 100_000, 1_000)
        assert est.status == "converged"
        assert est.lam == pytest.approx(LN2, abs=0.01)

    def test_stable_r25(self):
        # attracting fixed point x* = 0.6, lambda = ln|2 - r| = ln 0.5
        est = lyapunov_exponent(logistic(2.5), 0.3, 10_000, 1_000)
        assert est.lam == pytest.approx(math.log(0.5), abs=1e-3)

    def test_fixed_point_law(self):
        # lambda = ln|2 - r| on the stable branch 1 < r < 3
        for r in (1.5, 2.2, 2.9):
            est = lyapunov_exponent(logistic(r), 0.3, 100_000, 10_000)
            assert est.lam == pytest.approx(math.log(abs(2.0 - r)), abs=1e-3)

    def test_superstable_is_degenerate(self):
        # r = 2 started exactly on x* = 0.5: f'(x*) = 0 at every iterate.
        # (A generic start stalls half an ulp away and stays converged.)
        est = lyapunov_exponent(logistic(2.0), 0.5, 2_000, 1_000)
        assert est.status == "degenerate_derivative"
        assert est.degenerate_count == 2_000
        assert est.n_used == 0
        assert math.isnan(est.lam)


class TestZhangEstimates:
    def test_magnitude_alpha_zero_is_negative(self):
        est = lyapunov_exponent(zhang(0.0), 0.4, 20_000, 1_000)
        assert est.status == "converged"
        assert est.lam < 0

    def test_signed_escapes_immediately(self):
        est = lyapunov_exponent(zhang(2.0, log_sign="signed"), 0.4, 2_000, 0)
        assert est.status == "escaped"
        assert est.escape_step == 1

    def test_determinism(self):
        a = lyapunov_exponent(zhang(1.2), 0.4, 5_000, 500)
        b = lyapunov_exponent(zhang(1.2), 0.4, 5_000, 500)
        assert a.lam == b.lam and a.n_used == b.n_used

    def test_invalid_inputs(self):
        with pytest.raises(InvalidInput):
            lyapunov_exponent(zhang(1.0), 1.0, 5_000)
        with pytest.raises(InvalidInput):
            lyapunov_exponent(zhang(1.0), 0.4, 100)  # budget below minimum
        with pytest.raises(InvalidInput):
            lyapunov_exponent(zhang(1.0), 0.4, 5_000, -1)


class TestCurve:
    def test_grid_values(self):
        vals = grid_values(0.0, 1.0, 0.25)
        assert vals == [0.0, 0.25, 0.5, 0.75, 1.0]
        # accumulated float steps must not drop the endpoint
        assert len(grid_values(0.0, 5.0, 0.01)) == 501

    def test_set_axis(self):
        p = set_axis(zhang(0.0), "alpha", 2.5)
        assert p.alpha == 2.5
        with pytest.raises(InvalidInput):
            set_axis(p, "beta", 1.0)

    def test_curve_matches_pointwise_runs(self):
        pts = lyapunov_curve(logistic(0.0), "r", 2.4, 2.6, 0.1, 0.3,
                             2_000, 200)
        assert [v for v, _ in pts] == pytest.approx([2.4, 2.5, 2.6])
        for v, est in pts:
            solo = lyapunov_exponent(logistic(v), 0.3, 2_000, 200)
            assert est.lam == solo.lam

    def test_out_of_domain_point_reported_not_raised(self):
        # x0 = 1 is outside every zhang domain: each grid point reports
        # an escape at step 0 instead of aborting the whole curve
        pts = lyapunov_curve(zhang(0.0), "alpha", 0.0, 0.2, 0.1, 1.0,
                             2_000, 200)
        assert all(est.status == "escaped" and est.escape_step == 0
                   for _, est in pts)
