"""Command-line front end: ``tmdg run|convergence|fluxcheck``.

Every output file is a UTF-8 CSV with a one-line header and numbers printed
with 17 significant digits, so identical arguments give identical bytes.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from .analysis import L1_NORMS, convergence_study, error_norms
from .cases import available_cases, get_case
from .fluxcheck import PRECISIONS, check_fluxes
from .limiters import LimiterConfig
from .model import InadmissibleStateError, to_primitive
from .runner import default_limiters, run_case

PRIMITIVE_COLUMNS = ("rho", "vx", "vy", "pxx", "pxy", "pyy")
TOTAL_COLUMNS = ("mass", "mom_x", "mom_y", "energy_xx", "energy_xy", "energy_yy")
FMT = "%.17g"

log = logging.getLogger("tmdg")


class ConfigError(ValueError):
    """Invalid combination of command-line options."""


def write_csv(path, columns, rows):
    rows = np.asarray(rows, dtype=float).reshape(-1, len(columns))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(columns) + "\n")
        np.savetxt(fh, rows, fmt=FMT, delimiter=",")


def solution_table(result):
    """Node coordinates and primitive states, one row per node."""
    q = to_primitive(result.u)
    if result.dim == 1:
        x = result.nodes()
        return ("x",) + PRIMITIVE_COLUMNS, np.column_stack([x.ravel(), q.reshape(-1, 6)])
    X, Y = result.nodes()
    return ("x", "y") + PRIMITIVE_COLUMNS, np.column_stack([X.ravel(), Y.ravel(), q.reshape(-1, 6)])


def parse_grids(text):
    try:
        grids = [int(g) for g in text.replace(",", " ").split()]
    except ValueError:
        raise ConfigError(f"--grids must be a list of integers, got {text!r}") from None
    if len(grids) < 2:
        raise ConfigError("a convergence study needs at least two grids (--grids 32,64,...)")
    if any(g < 1 for g in grids):
        raise ConfigError("grid sizes must be positive")
    return grids


def limiter_config(case, args):
    """Case defaults overridden by ``--limiter``, ``--tvb-m``, ``--bp``, ``--bp-eps``."""
    base = default_limiters(case)
    tvb = base.tvb if args.limiter is None else args.limiter == "tvb"
    if tvb and case.dim != 1:
        raise ConfigError("the TVB limiter is one-dimensional only")
    bp = base.bp if args.bp is None else args.bp == "on"
    return LimiterConfig(
        tvb=tvb,
        tvb_M=base.tvb_M if args.tvb_m is None else args.tvb_m,
        bp=bp,
        bp_epsilon=base.bp_epsilon if args.bp_eps is None else args.bp_eps,
    )


def _check_overrides(case, args):
    if args.order not in (2, 3):
        raise ConfigError("--order must be 2 or 3")
    if case.dim == 1 and getattr(args, "ny", None) is not None:
        raise ConfigError(f"--ny given for the one-dimensional case {case.name!r}")
    if getattr(args, "vt", None) is not None:
        if case.extra_source is None:
            raise ConfigError(f"--vt applies only to cases with an absorption source, not {case.name!r}")
        if not 0.0 <= args.vt <= 1.0:
            raise ConfigError("--vt must lie in [0, 1]")


def _out_dir(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_run(args):
    case = get_case(args.case)
    _check_overrides(case, args)
    limiters = limiter_config(case, args)
    result = run_case(
        case,
        order=args.order,
        n=args.nx,
        ny=args.ny,
        cfl=args.cfl,
        t_end=args.tend,
        limiters=limiters,
        v_T=args.vt,
        stride=args.stride,
    )
    out = _out_dir(args)
    columns, table = solution_table(result)
    write_csv(out / "solution.csv", columns, table)
    write_csv(out / "entropy.csv", ("t", "total_entropy"), result.entropy)
    write_csv(out / "diagnostics.csv", ("t", "dt") + TOTAL_COLUMNS, result.diagnostics)
    print(f"case {case.name}: order {args.order}, {result.steps} steps to t = {result.t:.17g}")
    s = result.entropy_array()
    print(f"total entropy {s[0, 1]:.17g} -> {s[-1, 1]:.17g}")
    if case.exact is not None and case.dim == 1:
        l1, linf = error_norms(result.u, case.exact, result.mesh, result.ops, result.t, l1=args.norm)
        print(f"L1(rho) = {l1:.6e}  Linf(rho) = {linf:.6e}")
    print(f"wrote solution.csv, entropy.csv, diagnostics.csv to {out}")
    return 0


def cmd_convergence(args):
    case = get_case(args.case)
    _check_overrides(case, args)
    if case.exact is None:
        raise ConfigError(f"case {case.name!r} has no exact solution; choose smooth or smooth_source")
    grids = parse_grids(args.grids)
    limiters = limiter_config(case, args) if (args.limiter or args.bp) else LimiterConfig()
    report = convergence_study(
        case, args.order, grids, l1=args.norm, cfl=args.cfl, t_end=args.tend, limiters=limiters
    )
    out = _out_dir(args)
    rows = list(report.rows())
    write_csv(out / "errors.csv", ("N", "L1", "L1_order", "Linf", "Linf_order"), rows)
    print(f"{'N':>6} {'L1':>12} {'order':>7} {'Linf':>12} {'order':>7}")
    for n, l1, o1, linf, o2 in rows:
        print(f"{n:>6d} {l1:12.4e} {o1:7.3f} {linf:12.4e} {o2:7.3f}")
    print(f"wrote errors.csv to {out}")
    return 0


def cmd_fluxcheck(args):
    if args.samples < 1:
        raise ConfigError("--samples must be >= 1")
    report = check_fluxes(args.samples, args.seed, args.lo, args.hi, args.gap, args.precision)
    lines = list(report.lines())
    if args.out is not None:
        out = _out_dir(args)
        (out / "fluxcheck.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    print("\n".join(lines))
    return 0 if report.passed else 1


def _add_run_options(p, default_order=2):
    p.add_argument("--case", required=True, help=f"one of: {', '.join(available_cases())}")
    p.add_argument("--nx", type=int, default=None, help="elements in x (case default if omitted)")
    p.add_argument("--ny", type=int, default=None, help="elements in y (2D cases)")
    p.add_argument("--order", type=int, default=default_order, help="2 or 3")
    p.add_argument("--cfl", type=float, default=0.2)
    p.add_argument("--tend", type=float, default=None, help="final time (case default if omitted)")
    p.add_argument("--limiter", choices=("tvb", "none"), default=None)
    p.add_argument("--tvb-m", dest="tvb_m", type=float, default=None)
    p.add_argument("--bp", choices=("on", "off"), default=None)
    p.add_argument("--bp-eps", dest="bp_eps", type=float, default=None)
    p.add_argument("--norm", choices=L1_NORMS, default="nodal", help="discrete L1 norm")
    p.add_argument("--out", default=".", help="output directory")


def build_parser():
    parser = argparse.ArgumentParser(prog="tmdg", description="Entropy-stable DG for the ten-moment equations.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one case and write solution, entropy and diagnostics")
    _add_run_options(run)
    run.add_argument("--vt", type=float, default=None, help="absorption coefficient v_T (realistic_2d)")
    run.add_argument("--stride", type=int, default=1, help="record entropy and totals every N steps")
    run.set_defaults(func=cmd_run)

    conv = sub.add_parser("convergence", help="error table over a list of grids")
    _add_run_options(conv)
    conv.add_argument("--grids", default="32,64,128,256,512")
    conv.set_defaults(func=cmd_convergence)

    fc = sub.add_parser("fluxcheck", help="randomized entropy identities of the two-point fluxes")
    fc.add_argument("--samples", type=int, default=10_000)
    fc.add_argument("--seed", type=int, default=0)
    fc.add_argument("--lo", type=float, default=0.1, help="lower bound of every primitive component")
    fc.add_argument("--hi", type=float, default=10.0, help="upper bound of every primitive component")
    fc.add_argument("--gap", type=float, default=None, help="relative gap of near-equal pairs")
    fc.add_argument("--precision", choices=tuple(PRECISIONS), default="extended")
    fc.add_argument("--out", default=None, help="also write fluxcheck.csv here")
    fc.set_defaults(func=cmd_fluxcheck)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except KeyError as exc:
        print(f"tmdg: {exc.args[0]}", file=sys.stderr)
    except (ConfigError, InadmissibleStateError, FloatingPointError, ValueError, OSError) as exc:
        print(f"tmdg: error: {exc}", file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
