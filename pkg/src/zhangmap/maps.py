"""The iterated map family and its control maps.

Two variants of a one-dimensional log-power map are provided,

    zhang1:  x' = beta * x**-0.5 + c * (log x)**-alpha
    zhang2:  x' = (beta * eps_log / pi) * x**-0.5 + c * (log x)**-alpha

together with the logistic map x' = r*x*(1-x) as a control system with
known Lyapunov behaviour.  All logs are natural logs.

For 0 < x < 1 the factor (log x)**-alpha is not real-valued at non-integer
alpha, so the power of the log is taken by convention.  Two conventions are
supported via ``MapParams.log_sign``:

* ``"magnitude"`` (default): the term is c * |log x|**-alpha.  Orbits of
  the zhang variants with c > 0 then stay strictly positive and can wander
  indefinitely, which is the regime the Lyapunov sweeps target.
* ``"signed"``: the term is c * spow(log x, -alpha) with the signed-power
  extension sign(y)*|y|**p.  With a large positive c this sends any iterate
  in (0, 1) below zero and the orbit escapes immediately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError, InvalidInput, PoleAtZero

ZHANG1 = "zhang1"
ZHANG2 = "zhang2"
LOGISTIC = "logistic"
VARIANTS = (ZHANG1, ZHANG2, LOGISTIC)

SIGNED = "signed"
MAGNITUDE = "magnitude"

# |log x| below this would overflow any negative power; subnormal boundary,
# no realistic orbit lands there except x == 1 exactly.
LOG_EPS_GUARD = 1e-300


@dataclass(frozen=True)
class MapParams:
    """Full parameterization of one map instance.

    beta is the coefficient 2*pi*h/w of the zhang variants; c and alpha are
    the constant coefficient and log-power exponent; eps_log (log of the
    fundamental unit) only enters zhang2; r only enters the logistic map.
    """

    variant: str = ZHANG1
    beta: float = math.pi
    c: float = 100.0
    alpha: float = 0.0
    eps_log: float = math.pi
    r: float = 4.0
    log_sign: str = MAGNITUDE

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise InvalidInput(f"unknown variant {self.variant!r}")
        if self.log_sign not in (SIGNED, MAGNITUDE):
            raise InvalidInput(f"unknown log_sign {self.log_sign!r}")
        if self.variant in (ZHANG1, ZHANG2) and not self.beta > 0:
            raise InvalidInput("beta must be positive for zhang variants")
        if self.variant == ZHANG2 and not self.eps_log > 0:
            raise InvalidInput("eps_log must be positive for zhang2")
        if self.alpha < 0:
            raise InvalidInput("alpha must be nonnegative")

    def replace(self, **kw) -> "MapParams":
        d = self.__dict__.copy()
        d.update(kw)
        return MapParams(**d)

    def sqrt_coefficient(self) -> float:
        """Coefficient of x**-0.5: beta, or beta*eps_log/pi for zhang2.

        Computed as beta * (eps_log/pi) so eps_log == pi reproduces zhang1
        bit for bit.
        """
        if self.variant == ZHANG2:
            return self.beta * (self.eps_log / math.pi)
        return self.beta


COMPLETED = "completed"
ESCAPED = "escaped"


@dataclass
class Orbit:
    """Post-transient iterates of a map, with escape bookkeeping.

    ``samples`` holds only finite values.  If ``status == "escaped"``,
    ``escape_step`` equals len(samples): iterating from the last recorded
    value (or from within the transient, when samples is empty) raised a
    domain violation with ``escape_reason``.
    """

    samples: list = field(default_factory=list)
    status: str = COMPLETED
    escape_step: int | None = None
    escape_reason: str | None = None
    x0: float = 0.0
    transient_discarded: int = 0


def spow(y: float, p: float) -> float:
    """Signed power sign(y)*|y|**p; spow(0,0) = 1, spow(0,p>0) = 0."""
    if y == 0.0:
        if p < 0:
            raise PoleAtZero(f"spow(0, {p}) is a pole")
        return 1.0 if p == 0 else 0.0
    m = abs(y) ** p
    return m if y > 0 else -m


def _log_checked(params: MapParams, x: float) -> float:
    if x <= 0.0:
        raise DomainError(DomainError.NON_POSITIVE, x)
    lx = math.log(x)
    if abs(lx) < LOG_EPS_GUARD:
        raise DomainError(DomainError.LOG_SINGULARITY, x)
    return lx


def eval_map(params: MapParams, x: float) -> float:
    """One application of the map; raises DomainError outside the domain."""
    if params.variant == LOGISTIC:
        y = params.r * x * (1.0 - x)
        if not math.isfinite(y):
            raise DomainError(DomainError.OVERFLOW, x)
        return y
    lx = _log_checked(params, x)
    if params.log_sign == SIGNED:
        term = spow(lx, -params.alpha)
    else:
        term = abs(lx) ** (-params.alpha)
    y = params.sqrt_coefficient() * x ** -0.5 + params.c * term
    if not math.isfinite(y):
        raise DomainError(DomainError.OVERFLOW, x)
    return y


def eval_derivative(params: MapParams, x: float) -> float:
    """Analytic derivative of the map at x, same domain as eval_map.

    For the zhang variants, d/dx of the log term is
    -alpha*|log x|**(-alpha-1)/x under the signed convention (both sign
    branches) and picks up an extra sign(log x) under the magnitude one.
    """
    if params.variant == LOGISTIC:
        return params.r * (1.0 - 2.0 * x)
    lx = _log_checked(params, x)
    alpha = params.alpha
    dterm = -alpha * abs(lx) ** (-alpha - 1.0) / x
    if params.log_sign == MAGNITUDE and lx < 0:
        dterm = -dterm
    return -(params.sqrt_coefficient() / 2.0) * x ** -1.5 + params.c * dterm


def in_domain(params: MapParams, x: float) -> bool:
    """True if eval_map(params, x) is defined (overflow aside)."""
    if not math.isfinite(x):
        return False
    if params.variant == LOGISTIC:
        return True
    if x <= 0.0:
        return False
    return abs(math.log(x)) >= LOG_EPS_GUARD


def iterate_orbit(params: MapParams, x0: float, n: int, transient: int = 0) -> Orbit:
    """Iterate the map n+transient times from x0, recording the last <= n values.

    Any domain violation or non-finite iterate terminates the orbit with
    status "escaped"; the offending evaluation is not recorded.
    """
    if n < 1:
        raise InvalidInput("n must be >= 1")
    if transient < 0:
        raise InvalidInput("transient must be nonnegative")
    if not in_domain(params, x0):
        raise InvalidInput(f"x0={x0!r} violates the map domain")

    samples: list[float] = []
    orbit = Orbit(samples=samples, x0=x0, transient_discarded=transient)
    x = x0
    for k in range(n + transient):
        try:
            x = eval_map(params, x)
        except DomainError as e:
            orbit.status = ESCAPED
            orbit.escape_step = len(samples)
            orbit.escape_reason = e.reason
            return orbit
        if k >= transient:
            samples.append(x)
        # a value that is finite but out of domain is recorded; feeding it
        # back is what fails, on the next pass
    return orbit
