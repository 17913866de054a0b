"""Lyapunov exponent estimation for the map family.

The estimator averages log|f'(x_k)| along the orbit using the analytic
derivative; no two-orbit divergence heuristics.  Iterates whose derivative
magnitude is below DEGENERATE_FLOOR (superstable passes) are skipped and
counted instead of poisoning the average with -inf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidInput
from .maps import (
    LOG_EPS_GUARD,
    LOGISTIC,
    MAGNITUDE,
    MapParams,
    in_domain,
)

DEGENERATE_FLOOR = 1e-300

CONVERGED = "converged"
ESCAPED = "escaped"
DEGENERATE = "degenerate_derivative"


@dataclass
class LyapunovEstimate:
    lam: float  # nats per iteration; nan when no derivative was accumulated
    n_used: int
    transient: int
    status: str
    escape_step: int | None = None
    degenerate_count: int = 0


def _lyap_zhang(bcoef: float, c: float, alpha: float, magnitude: bool,
                x0: float, n: int, transient: int):
    """Tight loop for the zhang variants.

    Returns (acc, used, degen, escape_step).  Derivatives are accumulated at
    the produced iterates x_1 .. x_{transient+n}; escape_step is the index of
    the iterate whose evaluation left the domain, or None.
    """
    log = math.log
    isfinite = math.isfinite
    nege = -alpha - 1.0
    half = bcoef
    x = x0
    acc = 0.0
    used = 0
    degen = 0
    total = n + transient
    for idx in range(total + 1):
        # domain checks for the current iterate x_idx
        if x <= 0.0:
            return acc, used, degen, idx
        lx = log(x)
        alx = abs(lx)
        if alx < LOG_EPS_GUARD:
            return acc, used, degen, idx
        pw = alx ** -alpha
        dterm = -alpha * alx ** nege / x
        if magnitude:
            term = pw
            if lx < 0.0:
                dterm = -dterm
        else:
            term = pw if lx > 0.0 else -pw
        rsx = x ** -0.5
        if idx > transient:
            d = -(half / 2.0) * rsx / x + c * dterm
            ad = abs(d)
            if ad < DEGENERATE_FLOOR:
                degen += 1
            else:
                acc += log(ad)
                used += 1
        if idx < total:
            x = half * rsx + c * term
            if not isfinite(x):
                return acc, used, degen, idx + 1
    return acc, used, degen, None


def _lyap_logistic(r: float, x0: float, n: int, transient: int):
    log = math.log
    isfinite = math.isfinite
    x = x0
    acc = 0.0
    used = 0
    degen = 0
    total = n + transient
    for idx in range(total + 1):
        if idx > transient:
            d = r * (1.0 - 2.0 * x)
            ad = abs(d)
            if ad < DEGENERATE_FLOOR:
                degen += 1
            else:
                acc += log(ad)
                used += 1
        if idx < total:
            x = r * x * (1.0 - x)
            if not isfinite(x):
                return acc, used, degen, idx + 1
    return acc, used, degen, None


def lyapunov_exponent(params: MapParams, x0: float, n: int = 50_000,
                      transient: int = 1_000) -> LyapunovEstimate:
    """Estimate lambda = (1/N) sum log|f'(x_k)| over post-transient iterates."""
    if n < 1000:
        raise InvalidInput("iteration budget n must be >= 1000")
    if transient < 0:
        raise InvalidInput("transient must be nonnegative")
    if not in_domain(params, x0):
        raise InvalidInput(f"x0={x0!r} violates the map domain")

    if params.variant == LOGISTIC:
        acc, used, degen, esc = _lyap_logistic(params.r, x0, n, transient)
    else:
        acc, used, degen, esc = _lyap_zhang(
            params.sqrt_coefficient(), params.c, params.alpha,
            params.log_sign == MAGNITUDE, x0, n, transient)

    lam = acc / used if used > 0 else float("nan")
    if esc is not None:
        status = ESCAPED
    elif degen > 0:
        status = DEGENERATE
    else:
        status = CONVERGED
    return LyapunovEstimate(lam=lam, n_used=used, transient=transient,
                            status=status, escape_step=esc,
                            degenerate_count=degen)


AXIS_ALPHA = "alpha"
AXIS_C = "c"
AXIS_R = "r"
AXES = (AXIS_ALPHA, AXIS_C, AXIS_R)


def set_axis(params: MapParams, axis: str, value: float) -> MapParams:
    if axis not in AXES:
        raise InvalidInput(f"unknown axis {axis!r}")
    return params.replace(**{axis: value})


def grid_values(lo: float, hi: float, step: float) -> list[float]:
    """lo, lo+step, ... <= hi (with a half-ulp slack at the top end)."""
    if step <= 0:
        raise InvalidInput("step must be positive")
    if lo > hi:
        raise InvalidInput("inverted range")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [lo + i * step for i in range(count)]


def lyapunov_curve(params_template: MapParams, axis: str, lo: float, hi: float,
                   step: float, x0: float, n: int = 50_000,
                   transient: int = 1_000) -> list[tuple[float, LyapunovEstimate]]:
    """One independent lyapunov_exponent per grid point, ascending in the parameter."""
    out = []
    for v in grid_values(lo, hi, step):
        p = set_axis(params_template, axis, v)
        try:
            est = lyapunov_exponent(p, x0, n, transient)
        except InvalidInput:
            # x0 out of domain for this parameter value: report as escaped at step 0
            est = LyapunovEstimate(lam=float("nan"), n_used=0, transient=transient,
                                   status=ESCAPED, escape_step=0)
        out.append((v, est))
    return out
