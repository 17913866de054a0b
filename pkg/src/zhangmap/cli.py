"""Batch CLI: one subcommand per experiment, CSV out, structured exit codes.

Exit codes: 0 success, 2 usage error (unknown flag/subcommand, unparsable
number), 3 domain or cap error reported by a module.  All diagnostics go to
stderr; rows are fully computed before a single byte is written, so a failed
run leaves no partial CSV behind.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import arith
from .bifurcation import bifurcation_scan, detect_cycle, find_fixed_points
from .errors import DomainError, ZhangmapError
from .lyapunov import AXES, lyapunov_curve, lyapunov_exponent
from .maps import (
    LOGISTIC,
    MAGNITUDE,
    SIGNED,
    VARIANTS,
    MapParams,
    eval_map,
    iterate_orbit,
)
from .sweep import DEFAULT_MARGINAL_BAND, calibrate_c, grid_sweep

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3


def _fmt(v) -> str:
    """17-significant-digit decimal for floats; round-trips doubles exactly."""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def _emit(header: list[str], rows: list[list], out_path: str | None):
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _map_params(args) -> MapParams:
    return MapParams(variant=args.map, beta=args.beta, c=args.c,
                     alpha=args.alpha, eps_log=args.eps_log, r=args.r,
                     log_sign=args.log_sign)


def _probe_domain(params: MapParams, x0: float):
    """Surface the precise DomainError reason for a bad starting point."""
    eval_map(params, x0)


def _add_map_flags(sp):
    sp.add_argument("--map", choices=VARIANTS, default="zhang1")
    sp.add_argument("--beta", type=float, default=math.pi)
    sp.add_argument("--c", type=float, default=100.0)
    sp.add_argument("--alpha", type=float, default=0.0)
    sp.add_argument("--eps-log", dest="eps_log", type=float, default=math.pi)
    sp.add_argument("--r", type=float, default=4.0)
    sp.add_argument("--log-sign", dest="log_sign",
                    choices=(MAGNITUDE, SIGNED), default=MAGNITUDE)
    sp.add_argument("--x0", type=float, default=0.4)
    sp.add_argument("--iters", type=int, default=50_000)
    sp.add_argument("--transient", type=int, default=1_000)


def _add_common(sp):
    sp.add_argument("--out", default=None, help="CSV destination (default stdout)")
    sp.add_argument("--config", default=None,
                    help="key = value file supplying flag defaults")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="zhangmap",
                                 description="map-dynamics / L-function workbench")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    sp = sub.add_parser("lyap", help="single Lyapunov exponent")
    _add_common(sp)
    _add_map_flags(sp)

    sp = sub.add_parser("curve", help="lambda along one parameter axis")
    _add_common(sp)
    _add_map_flags(sp)
    sp.add_argument("--axis", choices=AXES, default="alpha")
    sp.add_argument("--lo", type=float, required=True)
    sp.add_argument("--hi", type=float, required=True)
    sp.add_argument("--step", type=float, required=True)

    sp = sub.add_parser("sweep", help="(c, alpha) lambda/regime grid")
    _add_common(sp)
    _add_map_flags(sp)
    sp.add_argument("--c-lo", dest="c_lo", type=float, required=True)
    sp.add_argument("--c-hi", dest="c_hi", type=float, required=True)
    sp.add_argument("--nc", type=int, required=True)
    sp.add_argument("--alpha-lo", dest="alpha_lo", type=float, required=True)
    sp.add_argument("--alpha-hi", dest="alpha_hi", type=float, required=True)
    sp.add_argument("--nalpha", type=int, required=True)
    sp.add_argument("--band", type=float, default=DEFAULT_MARGINAL_BAND)
    sp.add_argument("--threads", type=int, default=1,
                    help="worker processes; value-neutral")

    sp = sub.add_parser("bifurcate", help="attractor samples along an axis")
    _add_common(sp)
    _add_map_flags(sp)
    sp.add_argument("--axis", choices=AXES, default="alpha")
    sp.add_argument("--lo", type=float, required=True)
    sp.add_argument("--hi", type=float, required=True)
    sp.add_argument("--nparams", type=int, default=200)
    sp.add_argument("--nsamples", type=int, default=100)

    sp = sub.add_parser("cycles", help="periodic-orbit detection along an axis")
    _add_common(sp)
    _add_map_flags(sp)
    sp.add_argument("--axis", choices=AXES, default="r")
    sp.add_argument("--lo", type=float, required=True)
    sp.add_argument("--hi", type=float, required=True)
    sp.add_argument("--nparams", type=int, default=50)
    sp.add_argument("--tol", type=float, default=1e-6)
    sp.add_argument("--max-period", dest="max_period", type=int, default=64)

    sp = sub.add_parser("fixedpoints", help="fixed points in a bracket")
    _add_common(sp)
    _add_map_flags(sp)
    sp.add_argument("--lo", type=float, required=True)
    sp.add_argument("--hi", type=float, required=True)
    sp.add_argument("--brackets", type=int, default=1000)

    sp = sub.add_parser("orbit", help="raw post-transient orbit samples")
    _add_common(sp)
    _add_map_flags(sp)

    sp = sub.add_parser("lfunc", help="L(1,chi_d) three ways plus margins")
    _add_common(sp)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--d", type=int)
    g.add_argument("--dmin", type=int)
    sp.add_argument("--dmax", type=int)
    sp.add_argument("--c1", type=float, default=1.0)
    sp.add_argument("--A", type=float, default=2022.0)
    sp.add_argument("--terms", type=int, default=100_000)

    sp = sub.add_parser("psi", help="Chebyshev psi(x; q, a)")
    _add_common(sp)
    sp.add_argument("--x", type=float, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--a", type=int, default=None,
                    help="single residue; default all 0 <= a < q")

    sp = sub.add_parser("envelope", help="psi error envelope magnitude")
    _add_common(sp)
    sp.add_argument("--x", type=float, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--regime", choices=arith.ENVELOPE_REGIMES,
                    default=arith.REGIME_ZHANG)
    sp.add_argument("--c0", type=float, default=1.0)
    sp.add_argument("--A", type=float, default=2022.0)
    sp.add_argument("--epsilon", type=float, default=None)
    sp.add_argument("--A-eps", dest="A_eps", type=float, default=None)

    sp = sub.add_parser("genus", help="one-class-per-genus census, d < 0")
    _add_common(sp)
    sp.add_argument("--limit", type=int, required=True)

    sp = sub.add_parser("dg", help="d_g > g^g check in log space")
    _add_common(sp)
    sp.add_argument("--gmax", type=int, default=20)

    sp = sub.add_parser("calibrate", help="best-fit c against lambda targets")
    _add_common(sp)
    _add_map_flags(sp)
    sp.add_argument("--target", action="append", required=True,
                    metavar="ALPHA=LAMBDA",
                    help="repeatable alpha=lambda pair")
    sp.add_argument("--candidates", required=True,
                    help="comma-separated c values to try")
    return ap


# ---------------------------------------------------------------------------
# subcommand bodies: each returns (header, rows)


def _run_lyap(args):
    p = _map_params(args)
    _probe_domain(p, args.x0)
    est = lyapunov_exponent(p, args.x0, args.iters, args.transient)
    return (["lambda", "status", "n_used"],
            [[est.lam, est.status, est.n_used]])


def _run_curve(args):
    p = _map_params(args)
    pts = lyapunov_curve(p, args.axis, args.lo, args.hi, args.step,
                         args.x0, args.iters, args.transient)
    return (["param", "lambda", "status"],
            [[v, est.lam, est.status] for v, est in pts])


def _run_sweep(args):
    p = _map_params(args)
    grid = grid_sweep(p, args.c_lo, args.c_hi, args.nc,
                      args.alpha_lo, args.alpha_hi, args.nalpha,
                      args.x0, args.iters, args.transient,
                      marginal_band=args.band, workers=args.threads)
    rows = [[c, a, lam, regime] for c, a, lam, regime in grid.cells()]
    return ["c", "alpha", "lambda", "regime"], rows


def _run_bifurcate(args):
    p = _map_params(args)
    data = bifurcation_scan(p, args.axis, args.lo, args.hi,
                            args.nparams, args.nsamples, args.transient, args.x0)
    return ["param", "x"], [[v, x] for v, x in data.rows]


def _run_cycles(args):
    # period: the detected cycle length; 0 marks aperiodic, -1 escaped
    from .lyapunov import set_axis

    p = _map_params(args)
    n_samples = max(4 * args.max_period, 256)
    if args.nparams < 2:
        raise ZhangmapError("--nparams must be >= 2")
    rows = []
    step = (args.hi - args.lo) / (args.nparams - 1)
    for i in range(args.nparams):
        v = args.lo + i * step
        pv = set_axis(p, args.axis, v)
        try:
            orbit = iterate_orbit(pv, args.x0, n_samples, args.transient)
        except ZhangmapError:
            rows.append([v, -1, ""])
            continue
        if orbit.status == "escaped":
            rows.append([v, -1, ""])
            continue
        info = detect_cycle(orbit, args.tol, args.max_period)
        period = info.period if info.period is not None else 0
        if info.kind == "escaped":
            period = -1
        pts = ";".join(_fmt(x) for x in info.points)
        rows.append([v, period, pts])
    return ["param", "period", "points"], rows


def _run_fixedpoints(args):
    p = _map_params(args)
    fps = find_fixed_points(p, args.lo, args.hi, args.brackets)
    return (["x_star", "stability", "derivative_magnitude"],
            [[f.x_star, f.stability, f.derivative_magnitude] for f in fps])


def _run_orbit(args):
    p = _map_params(args)
    _probe_domain(p, args.x0)
    orbit = iterate_orbit(p, args.x0, args.iters, args.transient)
    return ["n", "x"], [[i, x] for i, x in enumerate(orbit.samples)]


def _run_lfunc(args):
    if args.d is not None:
        ds = [args.d]
    else:
        if args.dmax is None:
            raise ZhangmapError("--dmin requires --dmax")
        ds = arith.fundamental_discriminants(args.dmin, args.dmax)
    rows = []
    for d in ds:
        rep = arith.l_value_report(d, args.c1, args.A, args.terms)
        rows.append([rep.d, rep.h, rep.w, rep.L_class_number,
                     rep.L_finite_sum, rep.zhang_margin,
                     rep.empirical_constant])
    return ["d", "h", "w", "L_formula", "L_sum", "margin",
            "empirical_constant"], rows


def _run_psi(args):
    if args.q < 1:
        raise ZhangmapError("q must be >= 1")
    residues = range(args.q) if args.a is None else [args.a]
    rows = []
    for a in residues:
        r = arith.chebyshev_psi(args.x, args.q, a)
        rows.append([r.a, r.psi, r.main_term, r.error])
    return ["a", "psi", "main_term", "error"], rows


def _run_envelope(args):
    env = arith.error_envelope(args.x, args.q, args.regime, args.c0,
                               args.A, args.epsilon, args.A_eps)
    return (["x", "q", "regime", "envelope"],
            [[args.x, args.q, args.regime, env]])


def _run_genus(args):
    rows = [[r.d, r.h, r.g, r.one_class_per_genus]
            for r in arith.genus_scan(args.limit)]
    return ["d", "h", "g", "one_class_per_genus"], rows


def _run_dg(args):
    rows = [[r.g, r.log_d_g, r.g_log_g, r.holds]
            for r in arith.d_g_check(args.gmax)]
    return ["g", "log_dg", "g_log_g", "holds"], rows


def _run_calibrate(args):
    targets = []
    for t in args.target:
        try:
            a, lam = t.split("=", 1)
            targets.append((float(a), float(lam)))
        except ValueError as e:
            raise _UsageError(f"bad --target {t!r}: expected ALPHA=LAMBDA") from e
    try:
        cands = [float(c) for c in args.candidates.split(",") if c.strip()]
    except ValueError as e:
        raise _UsageError(f"bad --candidates {args.candidates!r}") from e
    p = _map_params(args)
    best_c, rms = calibrate_c(targets, cands, p, args.x0,
                              args.iters, args.transient)
    return ["best_c", "rms"], [[best_c, rms]]


class _UsageError(Exception):
    pass


_HANDLERS = {
    "lyap": _run_lyap,
    "curve": _run_curve,
    "sweep": _run_sweep,
    "bifurcate": _run_bifurcate,
    "cycles": _run_cycles,
    "fixedpoints": _run_fixedpoints,
    "orbit": _run_orbit,
    "lfunc": _run_lfunc,
    "psi": _run_psi,
    "envelope": _run_envelope,
    "genus": _run_genus,
    "dg": _run_dg,
    "calibrate": _run_calibrate,
}


def _load_config(path: str) -> list[str]:
    """Line-oriented `key = value` pairs, turned into flag tokens.

    Explicit command-line flags override config values because they are
    appended after the injected tokens (argparse keeps the last value).
    """
    tokens = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise _UsageError(f"{path}:{lineno}: expected key = value")
            key, value = line.split("=", 1)
            tokens.append("--" + key.strip().replace("_", "-"))
            tokens.append(value.strip())
    return tokens


def _inject_config(argv: list[str]) -> list[str]:
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        raise _UsageError("--config needs a path")
    tokens = _load_config(argv[i + 1])
    # subcommand first, then config-derived defaults, then explicit flags
    return argv[:1] + tokens + argv[1:]


def dispatch(argv: list[str]) -> int:
    parser = build_parser()
    try:
        expanded = _inject_config(argv) if argv else argv
        args = parser.parse_args(expanded)
    except _UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        header, rows = _HANDLERS[args.subcommand](args)
    except _UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ZhangmapError, DomainError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except (OverflowError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    try:
        _emit(header, rows, args.out)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
