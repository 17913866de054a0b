"""Unit tests for the map family: evaluation, derivatives, orbits."""

import math

import pytest

from zhangmap import (
    DomainError,
    InvalidInput,
    MapParams,
    PoleAtZero,
    eval_derivative,
    eval_map,
    in_domain,
    iterate_orbit,
    spow,
)

PI = math.pi


def signed(alpha, c=100.0, **kw):
    return MapParams(variant="zhang1", beta=PI, c=c, alpha=alpha,
                     log_sign="signed", **kw)


def magnitude(alpha, c=100.0, **kw):
    return MapParams(variant="zhang1", beta=PI, c=c, alpha=alpha, **kw)


class TestSpow:
    def test_positive_base(self):
        assert spow(2.0, 0.5) == pytest.approx(math.sqrt(2.0), abs=0)

    def test_negative_base_negative_power(self):
        assert spow(-4.0, -1.0) == -0.25
        assert spow(-0.5, -2.0) == -4.0

    def test_zero_conventions(self):
        assert spow(0.0, 0.0) == 1.0
        assert spow(0.0, 2.0) == 0.0
        with pytest.raises(PoleAtZero):
            spow(0.0, -1.0)

    def test_odd_symmetry(self):
        for y in (0.3, 1.7, 12.0):
            for p in (-2.5, -1.0, 0.25, 3.0):
                assert spow(-y, p) == -spow(y, p)


class TestEvalMap:
    def test_signed_interior_point(self):
        # pi/sqrt(0.5) + 100*spow(log 0.5, -2): log 0.5 < 0, so the power
        # term is negative and dominates
        p = signed(2.0)
        expect = PI / math.sqrt(0.5) + 100.0 * spow(math.log(0.5), -2.0)
        got = eval_map(p, 0.5)
        assert got == expect
        assert got == pytest.approx(-203.69401516240242, rel=1e-15)

    def test_signed_above_one(self):
        p = signed(2.0)
        got = eval_map(p, math.e)
        expect = PI * math.e ** -0.5 + 100.0  # log e = 1
        assert got == pytest.approx(expect, rel=1e-15)

    def test_magnitude_interior_point_is_positive(self):
        p = magnitude(2.0)
        got = eval_map(p, 0.5)
        assert got == PI / math.sqrt(0.5) + 100.0 * abs(math.log(0.5)) ** -2.0
        assert got > 0

    def test_conventions_agree_above_one(self):
        # log x > 0: signed and magnitude powers coincide
        for x in (1.5, 2.0, 10.0, 1e6):
            assert eval_map(signed(1.3), x) == eval_map(magnitude(1.3), x)

    def test_alpha_zero_log_term_is_constant(self):
        p = magnitude(0.0, c=7.0)
        for x in (0.2, 0.9, 3.0):
            assert eval_map(p, x) == pytest.approx(PI * x ** -0.5 + 7.0, rel=1e-15)

    def test_nonpositive_x_rejected(self):
        with pytest.raises(DomainError) as ei:
            eval_map(magnitude(1.0), 0.0)
        assert ei.value.reason == DomainError.NON_POSITIVE
        with pytest.raises(DomainError):
            eval_map(magnitude(1.0), -2.0)

    def test_log_singularity_at_one(self):
        with pytest.raises(DomainError) as ei:
            eval_map(magnitude(2.0), 1.0)
        assert ei.value.reason == DomainError.LOG_SINGULARITY

    def test_logistic(self):
        p = MapParams(variant="logistic", r=4.0)
        assert eval_map(p, 0.5) == 1.0
        assert eval_map(p, 1.0) == 0.0
        assert eval_map(p, 0.0) == 0.0

    def test_zhang2_reduces_to_zhang1_at_pi(self):
        p1 = MapParams(variant="zhang1", beta=PI, c=5.0, alpha=1.5)
        p2 = MapParams(variant="zhang2", beta=PI, c=5.0, alpha=1.5, eps_log=PI)
        for x in (0.3, 0.99, 2.0, 50.0):
            assert eval_map(p1, x) == eval_map(p2, x)

    def test_zhang2_scales_sqrt_term(self):
        p2 = MapParams(variant="zhang2", beta=PI, c=0.0, alpha=0.0,
                       eps_log=2 * PI)
        # c = 0 isolates the sqrt term: beta*eps_log/pi = 2*pi
        assert eval_map(p2, 4.0) == pytest.approx(2 * PI / 2.0, rel=1e-15)


class TestDerivative:
    def test_signed_frozen_value(self):
        p = signed(2.0)
        got = eval_derivative(p, math.e)
        expect = -(PI / 2.0) * math.e ** -1.5 - 100.0 * 2.0 / math.e
        assert got == pytest.approx(expect, rel=1e-15)

    @pytest.mark.parametrize("x", [0.2, 0.7, 1.5, 3.0, 40.0])
    @pytest.mark.parametrize("alpha", [0.0, 0.5, 2.0])
    @pytest.mark.parametrize("mode", ["signed", "magnitude"])
    def test_matches_central_difference(self, x, alpha, mode):
        p = MapParams(variant="zhang1", beta=PI, c=10.0, alpha=alpha,
                      log_sign=mode)
        h = 1e-6 * max(1.0, abs(x))
        fd = (eval_map(p, x + h) - eval_map(p, x - h)) / (2 * h)
        assert eval_derivative(p, x) == pytest.approx(fd, rel=1e-5)

    def test_logistic_derivative(self):
        p = MapParams(variant="logistic", r=3.0)
        assert eval_derivative(p, 0.5) == 0.0
        assert eval_derivative(p, 0.0) == 3.0


class TestDomain:
    def test_zhang_domain(self):
        p = magnitude(1.0)
        assert not in_domain(p, -1.0)
        assert not in_domain(p, 0.0)
        assert not in_domain(p, 1.0)
        assert not in_domain(p, float("inf"))
        assert not in_domain(p, float("nan"))
        assert in_domain(p, 0.4)
        assert in_domain(p, 2.0)

    def test_logistic_domain_is_the_line(self):
        p = MapParams(variant="logistic")
        assert in_domain(p, -5.0)
        assert in_domain(p, 0.0)
        assert not in_domain(p, float("nan"))


class TestParams:
    def test_validation(self):
        with pytest.raises(InvalidInput):
            MapParams(variant="nope")
        with pytest.raises(InvalidInput):
            MapParams(variant="zhang1", beta=0.0)
        with pytest.raises(InvalidInput):
            MapParams(variant="zhang2", eps_log=-1.0)
        with pytest.raises(InvalidInput):
            MapParams(alpha=-0.5)
        with pytest.raises(InvalidInput):
            MapParams(log_sign="absolute")

    def test_replace(self):
        p = MapParams(c=3.0)
        q = p.replace(alpha=2.0)
        assert q.alpha == 2.0 and q.c == 3.0 and p.alpha == 0.0


class TestOrbit:
    def test_signed_escape_from_half(self):
        # with c = 100 the signed convention drives x in (0,1) negative
        orb = iterate_orbit(signed(2.0), 0.5, 10)
        assert orb.status == "escaped"
        assert orb.escape_step == 1
        assert orb.escape_reason == DomainError.NON_POSITIVE
        assert len(orb.samples) == 1
        assert orb.samples[0] < 0

    def test_magnitude_orbit_survives(self):
        orb = iterate_orbit(magnitude(2.0), 0.4, 200, transient=50)
        assert orb.status == "completed"
        assert len(orb.samples) == 200
        assert all(x > 0 for x in orb.samples)

    def test_transient_discard(self):
        p = MapParams(variant="logistic", r=2.5)
        full = iterate_orbit(p, 0.3, 30)
        tail = iterate_orbit(p, 0.3, 10, transient=20)
        assert tail.samples == full.samples[20:]
        assert tail.transient_discarded == 20

    def test_invalid_start(self):
        with pytest.raises(InvalidInput):
            iterate_orbit(magnitude(1.0), 1.0, 10)
        with pytest.raises(InvalidInput):
            iterate_orbit(magnitude(1.0), 0.4, 0)

    def test_escape_step_counts_recorded_samples(self):
        orb = iterate_orbit(signed(2.0), 0.5, 10)
        assert orb.escape_step == len(orb.samples)
