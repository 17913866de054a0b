"""Parallel (c, alpha) grid sweeps, regime classification, calibration."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import InvalidInput
from .lyapunov import (
    ESCAPED as LYAP_ESCAPED,
    LyapunovEstimate,
    lyapunov_exponent,
)
from .maps import LOGISTIC, MapParams

CHAOTIC = "chaotic"
PERIODIC = "periodic"
MARGINAL = "marginal"
REGIME_ESCAPED = "escaped"

DEFAULT_MARGINAL_BAND = 0.01


def classify_regime(estimate: LyapunovEstimate,
                    marginal_band: float = DEFAULT_MARGINAL_BAND) -> str:
    """Sign-based classification with a dead band around zero."""
    if marginal_band <= 0:
        raise InvalidInput("marginal_band must be positive")
    if estimate.status == LYAP_ESCAPED:
        return REGIME_ESCAPED
    lam = estimate.lam
    if lam > marginal_band:
        return CHAOTIC
    if lam < -marginal_band:
        return PERIODIC
    return MARGINAL


@dataclass
class SweepGrid:
    c_values: list
    alpha_values: list
    lam: list          # [i_c][i_alpha], nan for missing
    regimes: list      # [i_c][i_alpha]
    statuses: list     # [i_c][i_alpha] estimator status per cell
    n_used: list       # [i_c][i_alpha]
    marginal_band: float = DEFAULT_MARGINAL_BAND

    def cells(self):
        for i, c in enumerate(self.c_values):
            for j, a in enumerate(self.alpha_values):
                yield c, a, self.lam[i][j], self.regimes[i][j]

    def lambda_deciles(self) -> list[float]:
        """Deciles of all non-missing lambda values, sorted ascending."""
        vals = sorted(v for row in self.lam for v in row if not math.isnan(v))
        if not vals:
            return []
        n = len(vals)
        return [vals[min(n - 1, (k * n) // 10)] for k in range(1, 11)]


def _linspace(lo: float, hi: float, n: int) -> list[float]:
    if n == 1:
        return [lo]
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def _sweep_cell(args):
    params_dict, c, alpha, x0, n_iter, transient = args
    if params_dict["variant"] == LOGISTIC:
        # 1xK control embedding: the alpha axis drives r
        p = MapParams(**{**params_dict, "r": alpha})
    else:
        p = MapParams(**{**params_dict, "c": c, "alpha": alpha})
    try:
        est = lyapunov_exponent(p, x0, n_iter, transient)
    except InvalidInput:
        est = LyapunovEstimate(lam=float("nan"), n_used=0, transient=transient,
                               status=LYAP_ESCAPED, escape_step=0)
    return est.lam, est.status, est.n_used


def grid_sweep(params_template: MapParams, c_lo: float, c_hi: float, n_c: int,
               alpha_lo: float, alpha_hi: float, n_alpha: int, x0: float,
               n_iter: int = 50_000, transient: int = 1_000,
               marginal_band: float = DEFAULT_MARGINAL_BAND,
               workers: int = 1) -> SweepGrid:
    """Lyapunov exponent and regime at every (c, alpha) grid point.

    Cells are independent; ``workers`` only sets the process count and never
    affects values (assembly is by cell index).
    """
    if n_c < 1 or n_alpha < 1:
        raise InvalidInput("n_c and n_alpha must be >= 1")
    if c_lo > c_hi or alpha_lo > alpha_hi:
        raise InvalidInput("inverted range")
    c_values = _linspace(c_lo, c_hi, n_c)
    alpha_values = _linspace(alpha_lo, alpha_hi, n_alpha)
    pd = params_template.__dict__.copy()
    jobs = [(pd, c, a, x0, n_iter, transient)
            for c in c_values for a in alpha_values]
    if workers <= 1:
        results = [_sweep_cell(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            chunk = max(1, len(jobs) // (workers * 4))
            results = list(ex.map(_sweep_cell, jobs, chunksize=chunk))

    lam_grid, regime_grid, status_grid, used_grid = [], [], [], []
    it = iter(results)
    for _ in c_values:
        lrow, rrow, srow, urow = [], [], [], []
        for _ in alpha_values:
            lam, status, used = next(it)
            est = LyapunovEstimate(lam=lam, n_used=used, transient=transient,
                                   status=status)
            lrow.append(lam if used > 0 else float("nan"))
            rrow.append(classify_regime(est, marginal_band))
            srow.append(status)
            urow.append(used)
        lam_grid.append(lrow)
        regime_grid.append(rrow)
        status_grid.append(srow)
        used_grid.append(urow)
    return SweepGrid(c_values=c_values, alpha_values=alpha_values,
                     lam=lam_grid, regimes=regime_grid, statuses=status_grid,
                     n_used=used_grid, marginal_band=marginal_band)


def calibrate_c(targets: list[tuple[float, float]], c_candidates: list[float],
                fixed: MapParams, x0: float,
                n_iter: int = 50_000, transient: int = 1_000) -> tuple[float, float]:
    """Candidate c minimizing RMS lambda deviation over (alpha, lambda) targets.

    Ties break toward smaller c; escaped or empty estimates score +inf.
    """
    if not targets:
        raise InvalidInput("targets must be non-empty")
    if not c_candidates:
        raise InvalidInput("c_candidates must be non-empty")
    best_c = None
    best_rms = math.inf
    for cand in sorted(c_candidates):
        sq = 0.0
        valid = True
        for alpha, lam_target in targets:
            p = fixed.replace(c=cand, alpha=alpha)
            try:
                est = lyapunov_exponent(p, x0, n_iter, transient)
            except InvalidInput:
                valid = False
                break
            if est.n_used == 0 or math.isnan(est.lam):
                valid = False
                break
            sq += (est.lam - lam_target) ** 2
        rms = math.sqrt(sq / len(targets)) if valid else math.inf
        if rms < best_rms:
            best_rms = rms
            best_c = cand
    if best_c is None:
        best_c = min(c_candidates)
    return best_c, best_rms
