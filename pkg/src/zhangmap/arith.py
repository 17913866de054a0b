"""Computational number theory: Kronecker characters, class numbers,
fundamental units, L(1,chi), lower-bound margins, psi(x;q,a), genus scan.

Conventions: d always denotes a fundamental discriminant (d = 1 mod 4
squarefree, or d = 4m with m = 2,3 mod 4 squarefree).  chi_d is the real
primitive character mod |d| realized by the Kronecker symbol (d/n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

import numpy as np

from .errors import CapExceeded, InvalidInput

PSI_CAP = 10 ** 8
GENUS_CAP = 10 ** 6
DG_CAP = 50


# ---------------------------------------------------------------------------
# characters


def kronecker(d: int, n: int) -> int:
    """Kronecker symbol (d/n), extended Jacobi symbol for all integers."""
    if n == 0:
        return 1 if d in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if d < 0:
            result = -result
    if n % 2 == 0:
        if d % 2 == 0:
            return 0
        # (d/2) by d mod 8
        tz = 0
        while n % 2 == 0:
            n //= 2
            tz += 1
        if tz % 2 == 1 and d % 8 in (3, 5):
            result = -result
    a = d % n
    # Jacobi symbol (a/n) for odd n > 0 by quadratic reciprocity
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_fundamental(d: int) -> bool:
    """True iff d is a fundamental discriminant (d != 0, 1)."""
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return _squarefree(abs(d))
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(abs(m))
    return False


def _squarefree(n: int) -> bool:
    if n % 4 == 0:
        return False
    p = 3
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        while n % p == 0:
            n //= p
        p += 2
    return True


def _require_fundamental(d: int):
    if not is_fundamental(d):
        raise InvalidInput(f"{d} is not a fundamental discriminant")


@lru_cache(maxsize=None)
def _spf_table(limit: int):
    """Smallest-prime-factor table 0..limit as a numpy array."""
    spf = np.arange(limit + 1, dtype=np.int64)
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == p:
            sl = spf[p * p::p]
            sl[sl == np.arange(p * p, limit + 1, p)] = p
    return spf


@lru_cache(maxsize=64)
def chi_table(d: int) -> np.ndarray:
    """chi_d(a) for a = 0 .. |d|-1, built multiplicatively from prime values."""
    _require_fundamental(d)
    m = abs(d)
    spf = _spf_table(m)
    chi = np.zeros(m, dtype=np.int8)
    if m > 1:
        chi[1] = 1
    for a in range(2, m):
        p = int(spf[a])
        rest = a // p
        cp = kronecker(d, p)
        chi[a] = cp * chi[rest] if rest > 1 else cp
    return chi


def chi(d: int, n: int) -> int:
    """chi_d(n) via the periodic table (falls back to kronecker for speed-free path)."""
    return int(chi_table(d)[n % abs(d)])


# ---------------------------------------------------------------------------
# class numbers and units


def class_number_imag(d: int) -> tuple[int, int]:
    """(h, ambiguous_count) by reduced-form enumeration for fundamental d < 0.

    Reduced: |b| <= a <= c, gcd(a,b,c) = 1, with b >= 0 whenever |b| = a
    or a = c (this boundary convention pins the count uniquely).
    """
    if d >= 0:
        raise InvalidInput("class_number_imag requires d < 0")
    _require_fundamental(d)
    D = -d
    amax = isqrt(D // 3)
    b0 = D % 2  # b parity matches d
    a = np.arange(1, amax + 1, dtype=np.int64)[:, None]
    b = np.arange(b0, amax + 1, 2, dtype=np.int64)[None, :]
    num = b * b + D
    mask = (b <= a) & (num % (4 * a) == 0)
    c = np.where(mask, num // (4 * a), 0)
    mask &= c >= a
    g = np.gcd(np.gcd(a, b), c)
    mask &= g == 1
    amb = mask & ((b == 0) | (b == a) | (a == c))
    n_amb = int(amb.sum())
    n_rest = int((mask & ~amb).sum())
    return n_amb + 2 * n_rest, n_amb


def roots_of_unity(d: int) -> int:
    """w: 6 for d = -3, 4 for d = -4, else 2."""
    if d == -3:
        return 6
    if d == -4:
        return 4
    return 2


def fundamental_unit_log(d: int) -> float:
    """log of the fundamental unit of Q(sqrt(d)), d > 0 fundamental.

    Continued-fraction expansion of the integral generator (sqrt(m) for
    d = 4m, (1+sqrt(d))/2 for d = 1 mod 4) with exact integer convergents;
    the first convergent whose associated element has norm +-1 is the unit.
    Only the final log is taken in floating point.
    """
    if d <= 0:
        raise InvalidInput("fundamental_unit_log requires d > 0")
    _require_fundamental(d)
    if d % 4 == 0:
        D = d // 4
        P, Q = 0, 1
        trace, norm = 0, -D
    else:
        D = d
        P, Q = 1, 2
        trace, norm = 1, (1 - d) // 4
    s = isqrt(D)
    p_cur, p_prev = 1, 0  # numerator seeds h_{-1} = 1, h_{-2} = 0
    q_cur, q_prev = 0, 1
    for _ in range(100 * (s + 2)):
        a = (P + s) // Q
        p_cur, p_prev = a * p_cur + p_prev, p_cur
        q_cur, q_prev = a * q_cur + q_prev, q_cur
        # element u = p - q * conj(omega); N(u) = p^2 - t*p*q + n*q^2
        N = p_cur * p_cur - trace * p_cur * q_cur + norm * q_cur * q_cur
        if N in (1, -1):
            return _log_unit(d, p_cur, q_cur, trace)
        P = a * Q - P
        Q = (D - P * P) // Q
    raise InvalidInput(f"continued fraction for d={d} did not close")


def _log_unit(d: int, p: int, q: int, trace: int) -> float:
    """log(p - q*conj(omega)) from exact integers, overflow-safe."""
    if trace == 1:
        # u = ((2p - q) + q*sqrt(d)) / 2
        A, B, rad, denom_log = 2 * p - q, q, d, math.log(2.0)
    else:
        # u = p + q*sqrt(m)
        A, B, rad, denom_log = p, q, d // 4, 0.0
    # log(A + B*sqrt(rad)) = log A + log1p(sqrt(B^2 rad / A^2))
    ratio2 = float(Fraction(B * B * rad, A * A))
    return math.log(A) + math.log1p(math.sqrt(ratio2)) - denom_log


def unit_norm_check(d: int) -> int:
    """Recompute the norm (+-1) of the unit found for d; exact integers."""
    if d % 4 == 0:
        D = d // 4
        P, Q, trace, norm = 0, 1, 0, -D
    else:
        D = d
        P, Q, trace, norm = 1, 2, 1, (1 - d) // 4
    s = isqrt(D)
    p_cur, p_prev = 1, 0
    q_cur, q_prev = 0, 1
    for _ in range(100 * (s + 2)):
        a = (P + s) // Q
        p_cur, p_prev = a * p_cur + p_prev, p_cur
        q_cur, q_prev = a * q_cur + q_prev, q_cur
        N = p_cur * p_cur - trace * p_cur * q_cur + norm * q_cur * q_cur
        if N in (1, -1):
            return int(N)
        P = a * Q - P
        Q = (D - P * P) // Q
    raise InvalidInput(f"continued fraction for d={d} did not close")


# ---------------------------------------------------------------------------
# L(1, chi) three ways


def class_number(d: int) -> int:
    """h for any fundamental d; enumeration for d < 0, L-value inversion for d > 0."""
    if d < 0:
        return class_number_imag(d)[0]
    L = dirichlet_L1_finite_sum(d)
    log_eps = fundamental_unit_log(d)
    h_real = L * math.sqrt(d) / (2.0 * log_eps)
    h = round(h_real)
    if abs(h_real - h) >= 0.01 or h < 1:
        raise InvalidInput(f"class number for d={d} did not round cleanly: {h_real}")
    return h


def dirichlet_L1_class_number(d: int) -> float:
    """L(1, chi_d) from the class-number formula.

    2*pi*h / (w*sqrt(|d|)) for d < 0; 2*h*log(eps) / sqrt(d) for d > 0.
    """
    _require_fundamental(d)
    if abs(d) < 3:
        raise InvalidInput("|d| must be >= 3")
    if d < 0:
        h, _ = class_number_imag(d)
        w = roots_of_unity(d)
        return 2.0 * math.pi * h / (w * math.sqrt(-d))
    h = class_number(d)
    return 2.0 * h * fundamental_unit_log(d) / math.sqrt(d)


def dirichlet_L1_finite_sum(d: int) -> float:
    """Exact finite character-sum evaluation of L(1, chi_d).

    d < 0: -(pi/|d|^{3/2}) * sum a*chi(a); the sum is an exact integer.
    d > 0: -(1/sqrt(d)) * sum chi(a)*log(sin(pi a/d)).
    """
    _require_fundamental(d)
    if abs(d) < 3:
        raise InvalidInput("|d| must be >= 3")
    table = chi_table(d)
    m = abs(d)
    if d < 0:
        S = int(np.dot(np.arange(m, dtype=np.int64), table.astype(np.int64)))
        return -math.pi * S / m ** 1.5
    a = np.arange(1, m)
    vals = table[1:].astype(np.float64) * np.log(np.sin(np.pi * a / m))
    return -math.fsum(vals.tolist()) / math.sqrt(m)


def dirichlet_L1_partial_series(d: int, terms: int = 100_000) -> float:
    """Truncated Dirichlet series sum chi(n)/n, n <= terms."""
    _require_fundamental(d)
    if terms < 1:
        raise InvalidInput("terms must be >= 1")
    table = chi_table(d).astype(np.float64)
    m = abs(d)
    total = 0.0
    chunk = 2 ** 20
    for start in range(1, terms + 1, chunk):
        stop = min(terms, start + chunk - 1)
        n = np.arange(start, stop + 1, dtype=np.int64)
        total += float(np.sum(table[n % m] / n))
    return total


@dataclass
class LValueReport:
    d: int
    h: int
    w: int
    L_class_number: float
    L_finite_sum: float
    L_partial_series: float
    zhang_margin: float
    empirical_constant: float       # inf when not representable in double
    log_empirical_constant: float


@dataclass
class MarginResult:
    margin: float
    empirical_constant: float
    log_empirical_constant: float


def zhang_margin(d: int, c1: float = 1.0, A: float = 2022.0) -> MarginResult:
    """margin = L(1,chi_d) - c1*(log|d|)^-A; all scaling done in log space.

    empirical_constant = L*(log|d|)^A overflows double precision for large A;
    the representable value is inf then, with the log-space value alongside.
    """
    if abs(d) < 3:
        raise InvalidInput("|d| must be >= 3")
    if c1 < 0:
        raise InvalidInput("c1 must be nonnegative")
    L = dirichlet_L1_class_number(d)
    lnln = math.log(math.log(abs(d)))
    if c1 == 0:
        term = 0.0
    else:
        lt = math.log(c1) - A * lnln
        term = math.exp(lt) if lt < 709 else math.inf
    margin = L - term
    log_emp = math.log(L) + A * lnln
    emp = math.exp(log_emp) if log_emp < 709 else math.inf
    return MarginResult(margin=margin, empirical_constant=emp,
                        log_empirical_constant=log_emp)


def l_value_report(d: int, c1: float = 1.0, A: float = 2022.0,
                   series_terms: int = 100_000) -> LValueReport:
    """All L(1,chi) routes plus the lower-bound margin for one discriminant."""
    L_cn = dirichlet_L1_class_number(d)
    L_fs = dirichlet_L1_finite_sum(d)
    L_ps = dirichlet_L1_partial_series(d, series_terms)
    m = zhang_margin(d, c1, A)
    return LValueReport(d=d, h=class_number(d), w=roots_of_unity(d),
                        L_class_number=L_cn, L_finite_sum=L_fs,
                        L_partial_series=L_ps, zhang_margin=m.margin,
                        empirical_constant=m.empirical_constant,
                        log_empirical_constant=m.log_empirical_constant)


def fundamental_discriminants(lo: int, hi: int) -> list[int]:
    """All fundamental d with lo <= d <= hi, ascending."""
    return [d for d in range(lo, hi + 1) if d not in (0, 1) and is_fundamental(d)]


# ---------------------------------------------------------------------------
# zero-free region and error envelopes


@dataclass
class ZeroFreeBound:
    q: int
    A: float
    C2: float
    beta_upper: float

    @property
    def exponent(self) -> float:
        """Exponent of (log q)^-1 in the bound: A + 2."""
        return self.A + 2


def zero_free_beta_bound(q: int, A: float = 2022.0, C2: float = 1.0) -> ZeroFreeBound:
    """Upper bound 1 - C2*(log q)^(-A-2) on the rightmost real zero."""
    if q < 3:
        raise InvalidInput("q must be >= 3")
    if A < 0:
        raise InvalidInput("A must be nonnegative")
    lt = math.log(C2) - (A + 2) * math.log(math.log(q)) if C2 > 0 else -math.inf
    term = math.exp(lt) if lt < 709 else math.inf
    return ZeroFreeBound(q=q, A=A, C2=C2, beta_upper=1.0 - term)


def zhang_envelope_exponent(A: int) -> Fraction:
    """Exponent 1/(2A+4) of log x inside the improved error envelope."""
    return Fraction(1, 2 * A + 4)


def zero_free_exponent(A: int) -> int:
    """Exponent A + 2 of (log q)^-1 in the zero-free region."""
    return A + 2


REGIME_PAGE = "page"
REGIME_SIEGEL_WALFISZ = "siegel_walfisz"
REGIME_ZHANG = "zhang"
ENVELOPE_REGIMES = (REGIME_PAGE, REGIME_SIEGEL_WALFISZ, REGIME_ZHANG)


def error_envelope(x: float, q: int, regime: str, c0: float = 1.0,
                   A: float = 2022.0, epsilon: float | None = None,
                   A_eps: float | None = None) -> float:
    """Magnitude of the psi(x;q,a) error envelope for the given regime.

    page / siegel_walfisz: x*exp(-c0*sqrt(log x)).  zhang:
    x*exp(-c0*(log x)^(1/(2A+4))).  Under page, supplying A_eps and epsilon
    switches to the ineffective q-dependent term x*exp(-A_eps*q^-eps*log x).
    """
    if x < 3:
        raise InvalidInput("x must be >= 3")
    if regime not in ENVELOPE_REGIMES:
        raise InvalidInput(f"unknown regime {regime!r}")
    lx = math.log(x)
    if regime == REGIME_ZHANG:
        return x * math.exp(-c0 * lx ** (1.0 / (2.0 * A + 4.0)))
    if regime == REGIME_PAGE and A_eps is not None and epsilon is not None:
        return x * math.exp(-A_eps * q ** (-epsilon) * lx)
    return x * math.exp(-c0 * math.sqrt(lx))


# ---------------------------------------------------------------------------
# Chebyshev psi in arithmetic progressions


@lru_cache(maxsize=4)
def _von_mangoldt_support(cap: int):
    """(n, Lambda(n)) arrays for prime powers n <= cap."""
    sieve = np.ones(cap + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, isqrt(cap) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    primes = np.nonzero(sieve)[0].astype(np.int64)
    logs = np.log(primes.astype(np.float64))
    ns = [primes]
    vs = [logs]
    for p in primes[primes <= isqrt(cap)]:
        lp = math.log(float(p))
        pk = int(p) * int(p)
        while pk <= cap:
            ns.append(np.array([pk], dtype=np.int64))
            vs.append(np.array([lp]))
            pk *= int(p)
    n_all = np.concatenate(ns)
    v_all = np.concatenate(vs)
    order = np.argsort(n_all, kind="stable")
    return n_all[order], v_all[order]


@dataclass
class PsiResult:
    x: float
    q: int
    a: int
    psi: float
    main_term: float
    error: float
    phi_q: int


def euler_phi(q: int) -> int:
    """Euler totient by trial factorization."""
    if q < 1:
        raise InvalidInput("q must be >= 1")
    result = q
    n = q
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1 if p == 2 else 2
    if n > 1:
        result -= result // n
    return result


def chebyshev_psi(x: float, q: int, a: int) -> PsiResult:
    """Exact sum of Lambda(n) over n <= x, n = a mod q (fsum of log p terms).

    main_term is x/phi(q) for gcd(a, q) = 1, else 0; the sieve refuses
    above PSI_CAP rather than degrading.
    """
    if x < 1:
        raise InvalidInput("x must be >= 1")
    if q < 1 or not 0 <= a < q:
        raise InvalidInput("need q >= 1 and 0 <= a < q")
    if x > PSI_CAP:
        raise CapExceeded(f"x={x} above sieve cap {PSI_CAP}")
    xi = int(math.floor(x))
    cap = _psi_cache_cap(xi)
    n_all, v_all = _von_mangoldt_support(cap)
    sel = (n_all <= xi) & (n_all % q == a)
    psi = math.fsum(v_all[sel].tolist())
    phi_q = euler_phi(q)
    main = x / phi_q if gcd(a, q) == 1 else 0.0
    return PsiResult(x=x, q=q, a=a, psi=psi, main_term=main,
                     error=psi - main, phi_q=phi_q)


def _psi_cache_cap(xi: int) -> int:
    """Round the sieve size up to a power of two so nearby x share one table."""
    cap = 1024
    while cap < xi:
        cap *= 2
    return min(cap, PSI_CAP)


# ---------------------------------------------------------------------------
# genus theory


@dataclass
class GenusRow:
    d: int
    h: int
    g: int
    one_class_per_genus: bool
    ambiguous_count: int


def prime_divisor_count(n: int, spf: np.ndarray | None = None) -> int:
    """Number of distinct prime divisors of |n|."""
    n = abs(n)
    count = 0
    if spf is not None and n < len(spf):
        while n > 1:
            p = int(spf[n])
            count += 1
            while n % p == 0:
                n //= p
        return count
    p = 2
    while p * p <= n:
        if n % p == 0:
            count += 1
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        count += 1
    return count


def genus_scan(limit: int) -> list[GenusRow]:
    """For every fundamental -limit <= d < 0: does every genus hold one class?

    one_class_per_genus = (h == 2^(g-1)); the independent characterization
    (every reduced form ambiguous) is carried along for cross-checking.
    """
    if limit < 3:
        raise InvalidInput("limit must be >= 3")
    if limit > GENUS_CAP:
        raise CapExceeded(f"limit {limit} above cap {GENUS_CAP}")
    spf = _spf_table(limit)
    rows = []
    for D in range(3, limit + 1):
        d = -D
        if not _is_fundamental_neg(D, spf):
            continue
        h, amb = class_number_imag(d)
        g = prime_divisor_count(D, spf)
        rows.append(GenusRow(d=d, h=h, g=g,
                             one_class_per_genus=(h == 2 ** (g - 1)),
                             ambiguous_count=amb))
    return rows


def _is_fundamental_neg(D: int, spf: np.ndarray) -> bool:
    """is_fundamental(-D) using a precomputed spf table."""
    if D % 4 == 3:
        return _squarefree_spf(D, spf)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (1, 2) and _squarefree_spf(m, spf)
    return False


def _squarefree_spf(n: int, spf: np.ndarray) -> bool:
    while n > 1:
        p = int(spf[n])
        n //= p
        if n % p == 0:
            return False
    return True


# ---------------------------------------------------------------------------
# the d_g product bound


@dataclass
class DgRow:
    g: int
    log_d_g: float
    g_log_g: float
    holds: bool


def d_g_check(g_max: int) -> list[DgRow]:
    """d_g = 3*4*5*7*...*p_g (odd primes with 4 in place of 2) versus g^g.

    Compared as log d_g > g*log g to stay clear of overflow.
    """
    if g_max < 1:
        raise InvalidInput("g_max must be >= 1")
    if g_max > DG_CAP:
        raise CapExceeded(f"g_max {g_max} above cap {DG_CAP}")
    terms = _dg_terms(g_max)
    rows = []
    log_dg = 0.0
    for g, t in enumerate(terms, start=1):
        log_dg += math.log(t)
        glg = g * math.log(g) if g > 1 else 0.0
        rows.append(DgRow(g=g, log_d_g=log_dg, g_log_g=glg,
                          holds=log_dg > glg))
    return rows


def _dg_terms(count: int) -> list[int]:
    """3, 4, 5, 7, 11, ...: the primes with 2 replaced by 4, sorted."""
    terms = [3, 4]
    n = 5
    while len(terms) < count:
        if all(n % p for p in range(3, isqrt(n) + 1, 2)):
            terms.append(n)
        n += 2
    return terms[:count]
