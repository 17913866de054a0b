"""Bifurcation diagrams, cycle detection and fixed-point location."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import InvalidInput
from .lyapunov import AXES, set_axis
from .maps import (
    ESCAPED as ORBIT_ESCAPED,
    LOGISTIC,
    MapParams,
    Orbit,
    eval_derivative,
    eval_map,
    iterate_orbit,
)


@dataclass
class BifurcationData:
    axis: str
    rows: list = field(default_factory=list)  # (parameter value, attractor sample)


def bifurcation_scan(params_template: MapParams, axis: str, lo: float, hi: float,
                     n_params: int, n_samples: int, transient: int,
                     x0: float) -> BifurcationData:
    """Attractor samples at n_params evenly spaced parameter values.

    Escaped orbits contribute their surviving prefix; finite out-of-domain
    values recorded by the orbit are kept (rendering concerns are downstream).
    """
    if n_params < 2:
        raise InvalidInput("n_params must be >= 2")
    if n_samples < 1:
        raise InvalidInput("n_samples must be >= 1")
    if lo >= hi:
        raise InvalidInput("inverted or empty range")
    data = BifurcationData(axis=axis)
    step = (hi - lo) / (n_params - 1)
    for i in range(n_params):
        v = lo + i * step
        p = set_axis(params_template, axis, v)
        try:
            orbit = iterate_orbit(p, x0, n_samples, transient)
        except InvalidInput:
            continue  # x0 outside this parameter's domain: empty column
        for s in orbit.samples:
            data.rows.append((v, s))
    return data


FIXED_POINT = "fixed_point"
CYCLE = "cycle"
APERIODIC = "aperiodic"
ESCAPED = "escaped"


@dataclass
class CycleInfo:
    kind: str
    period: int | None = None  # set when kind is cycle (or 1 for fixed_point)
    points: list = field(default_factory=list)
    tolerance: float = 1e-6


def detect_cycle(orbit: Orbit, tol: float = 1e-6, max_period: int = 64) -> CycleInfo:
    """Smallest period p <= max_period closing the orbit tail within relative tol.

    The test window is the last 2*max_period recorded samples; |x_{k+p}-x_k|
    <= tol*max(1,|x_k|) must hold for every comparable k in the window.
    """
    if tol <= 0:
        raise InvalidInput("tol must be positive")
    if max_period < 1:
        raise InvalidInput("max_period must be >= 1")
    if orbit.status == ORBIT_ESCAPED:
        return CycleInfo(kind=ESCAPED, tolerance=tol)
    samples = orbit.samples
    L = len(samples)
    if L < 4 * max_period:
        raise InvalidInput(f"orbit too short: {L} < {4 * max_period} samples")
    window_start = L - 2 * max_period
    for p in range(1, max_period + 1):
        ok = True
        for k in range(window_start, L - p):
            xk = samples[k]
            if abs(samples[k + p] - xk) > tol * max(1.0, abs(xk)):
                ok = False
                break
        if ok:
            points = samples[L - p:]
            kind = FIXED_POINT if p == 1 else CYCLE
            return CycleInfo(kind=kind, period=p, points=points, tolerance=tol)
    return CycleInfo(kind=APERIODIC, tolerance=tol)


ATTRACTING = "attracting"
REPELLING = "repelling"
NEUTRAL = "neutral"

NEUTRAL_BAND = 1e-9
RESIDUAL_TOL = 1e-9


@dataclass
class FixedPoint:
    x_star: float
    stability: str
    derivative_magnitude: float


def _classify(dmag: float) -> str:
    if abs(dmag - 1.0) <= NEUTRAL_BAND:
        return NEUTRAL
    return ATTRACTING if dmag < 1.0 else REPELLING


def find_fixed_points(params: MapParams, bracket_lo: float, bracket_hi: float,
                      n_brackets: int = 1000) -> list[FixedPoint]:
    """Bracketed bisection on g(x) = f(x) - x over n_brackets subintervals.

    Bisection, not Newton: the zhang derivative spans dozens of orders of
    magnitude and Newton steps overshoot.  Subintervals where the map is
    undefined (x <= 0, the log singularity at x = 1) are skipped.
    """
    if n_brackets < 1:
        raise InvalidInput("n_brackets must be >= 1")
    if bracket_lo >= bracket_hi:
        raise InvalidInput("inverted bracket")
    if params.variant != LOGISTIC and bracket_lo <= 0:
        raise InvalidInput("bracket must be positive for zhang variants")

    def g(x: float) -> float | None:
        try:
            return eval_map(params, x) - x
        except Exception:
            return None

    edges = [bracket_lo + (bracket_hi - bracket_lo) * i / n_brackets
             for i in range(n_brackets + 1)]
    roots: list[FixedPoint] = []
    seen: list[float] = []
    for a, b in zip(edges, edges[1:]):
        ga, gb = g(a), g(b)
        if ga is None or gb is None:
            continue
        if ga == 0.0:
            root = a
        elif gb == 0.0 and b == edges[-1]:
            root = b
        elif ga * gb < 0:
            lo_, hi_, glo = a, b, ga
            for _ in range(200):
                mid = 0.5 * (lo_ + hi_)
                if hi_ - lo_ <= 1e-12 * max(1.0, abs(mid)):
                    break
                gm = g(mid)
                if gm is None:
                    break
                if gm == 0.0:
                    lo_ = hi_ = mid
                    break
                if glo * gm < 0:
                    hi_ = mid
                else:
                    lo_, glo = mid, gm
            root = 0.5 * (lo_ + hi_)
        else:
            continue
        if any(abs(root - s) <= 1e-9 * max(1.0, abs(s)) for s in seen):
            continue
        gr = g(root)
        if gr is None or abs(gr) > RESIDUAL_TOL * max(1.0, abs(root)):
            continue
        try:
            dmag = abs(eval_derivative(params, root))
        except Exception:
            continue
        seen.append(root)
        roots.append(FixedPoint(x_star=root, stability=_classify(dmag),
                                derivative_magnitude=dmag))
    return roots
