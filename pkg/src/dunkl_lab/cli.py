"""Command line interface: dunkl-lab <subcommand> [flags].

Exit codes: 0 all checks passed, 1 a check failed, 2 configuration error,
3 numerical non-convergence.  A JSON file given by --config supplies defaults
for any flag (keys are the flag names with dashes replaced by underscores);
flags on the command line take precedence.  The seed falls back to the
DUNKL_LAB_SEED environment variable, then 0.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import reports
from .densities import grabiner_density, jacobi_density_km, jacobi_semigroup_density, semigroup_density
from .roots import RootSystemError, build, multiplicity
from .rng import seed_from
from .sde import ProcessSpec, StepCollapse, hitting_time_mc, simulate
from .series import NotConverged, PochhammerZero
from .tails import RangeViolation, survival

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


def _vec(v) -> np.ndarray:
    if v is None:
        return None
    if isinstance(v, (list, tuple)):
        return np.asarray(v, dtype=float)
    try:
        return np.array([float(s) for s in str(v).split(",") if s.strip()])
    except ValueError as e:
        raise ConfigError(f"cannot parse vector {v!r}") from e


def _seed(args) -> int:
    if args.seed is not None:
        return seed_from(args.seed)
    env = os.environ.get("DUNKL_LAB_SEED")
    if env:
        try:
            return seed_from(env)
        except ValueError as e:
            raise ConfigError(f"DUNKL_LAB_SEED={env!r} is not an integer") from e
    return 0


def _emit(text: str, out) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _multiplicity(args):
    rs = build(args.family, args.m)
    named = {n: getattr(args, n) for n in ("k0", "k1", "k2") if getattr(args, n) is not None}
    return multiplicity(rs, **named)


def _process(args) -> ProcessSpec:
    x = _vec(args.x)
    seed = _seed(args)
    if args.process == "radial":
        k = _multiplicity(args)
        if x is None:
            raise ConfigError("--x is required")
        return ProcessSpec.radial(k, x, args.T, args.dt, seed)
    if args.process == "laguerre":
        if x is None:
            x = np.arange(args.m, 0, -1, dtype=float) ** 2
        return ProcessSpec.laguerre(args.beta, args.delta, x, args.T, args.dt, seed)
    if x is None:
        raise ConfigError("--x (angles) is required")
    if args.p is not None and args.q is not None:
        return ProcessSpec.jacobi(args.beta, args.p, args.q, x, args.T, args.dt, seed)
    return ProcessSpec.jacobi_from_k(args.k0, args.k1, args.k2 or 0.0, x, args.T, args.dt, seed)


# ---------------------------------------------------------------- subcommands


def cmd_simulate(args) -> int:
    spec = _process(args)
    traj = simulate(spec, path=args.path, every=args.every)
    _emit(reports.csv_text(reports.trajectory_header(spec.m), reports.trajectory_rows(traj)), args.out)
    if args.svg:
        reports.write_svg(args.svg, {f"x{i + 1}": (traj.times, traj.states[:, i]) for i in range(spec.m)},
                          title="trajectory", xlabel="t", ylabel="x")
    return EXIT_OK


def cmd_hitting_tail(args) -> int:
    k = _multiplicity(args)
    x = _vec(args.x)
    times = _vec(args.times) if args.times is not None else np.linspace(args.T / 5, args.T, 5)
    spec = ProcessSpec.radial(k, x, float(times.max()), args.dt, _seed(args))
    curve = hitting_time_mc(spec, args.paths, times, threads=args.threads)
    analytic = survival(k, x, times)
    rows = reports.survival_rows(curve, analytic)
    _emit(reports.csv_text(reports.SCHEMAS["survival"], rows), args.out)
    if args.svg:
        reports.write_svg(args.svg, {"Monte Carlo": (times, curve.survival), "analytic": (times, analytic)},
                          title="P(T0 > t)", xlabel="t", ylabel="survival")
    z = np.array([r[-1] for r in rows])
    return EXIT_OK if np.all(np.abs(z) <= args.z_max) else EXIT_FAIL


def _slice(args, m):
    y = _vec(args.y)
    if y is None or y.size != m:
        raise ConfigError(f"--y needs {m} coordinates")
    grid = np.linspace(args.lo, args.hi, args.points)
    Y = np.tile(y, (grid.size, 1))
    Y[:, args.coord] = grid
    return grid, Y


def cmd_density_check(args) -> int:
    fam = args.family.upper()
    rs = build(fam, args.m)
    k = multiplicity(rs, k0=1.0, k1=1.0) if fam == "B" else multiplicity(rs, k1=1.0)
    x = _vec(args.x)
    grid, Y = _slice(args, args.m)
    series = semigroup_density(k, args.t, x, Y)
    det = grabiner_density(fam, args.m, args.t, x, Y)
    rel = np.abs(series / det - 1)
    _emit(reports.csv_text(reports.SCHEMAS["density_slice"], zip(grid, series, det, rel)), args.out)
    return EXIT_OK if np.all(rel <= args.tol) else EXIT_FAIL


def cmd_jacobi_density(args) -> int:
    theta = _vec(args.theta)
    m = theta.size
    grid, L = _slice(args, m)
    series = jacobi_semigroup_density(m, args.beta, args.r, args.s, args.t, theta, L,
                                      max_degree=args.max_degree or (None if args.beta == 2 else 6))
    if args.beta == 2:
        det = jacobi_density_km(m, args.r, args.s, args.t, theta, L)
        rel = np.abs(series / det - 1)
    else:
        det = np.full(grid.size, np.nan)
        rel = np.full(grid.size, np.nan)
    _emit(reports.csv_text(reports.SCHEMAS["density_slice"], zip(grid, series, det, rel)), args.out)
    return EXIT_OK if args.beta != 2 or np.all(rel <= args.tol) else EXIT_FAIL


def cmd_laguerre_map(args) -> int:
    from .coupling import laguerre_consistency
    r = laguerre_consistency(args.m, args.beta, args.delta, n_paths=args.paths, start=_vec(args.x),
                             T=args.T, dt=args.dt, seed=_seed(args))
    rows = [(i + 1, st, p) for i, (st, p) in enumerate(zip(r.statistics, r.pvalues))]
    _emit(reports.csv_text(reports.SCHEMAS["laguerre_map"], rows), args.out)
    return EXIT_OK if r.ok else EXIT_FAIL


def cmd_verify(args) -> int:
    from .suites import SUITES, run_suite
    if args.suite not in SUITES:
        raise ConfigError(f"unknown suite {args.suite!r}; choose from {sorted(SUITES)}")
    budget = {}
    if args.paths is not None:
        budget["n_paths"] = args.paths
    budget["threads"] = args.threads
    results = run_suite(args.suite, **budget)
    rows = [(r.name, "PASS" if r.passed else "FAIL", r.detail) for r in results]
    for r in results:
        print(r.line())
    if args.out:
        reports.write_csv(args.out, reports.SCHEMAS["verify"], rows)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# ---------------------------------------------------------------- parser


def _common(p, seed=True):
    p.add_argument("--config", help="JSON file with default values for the flags")
    p.add_argument("--out", help="CSV output path (default: stdout)")
    if seed:
        p.add_argument("--seed", type=int, default=None)


def _law(p):
    p.add_argument("--family", default="B")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--k0", type=float)
    p.add_argument("--k1", type=float)
    p.add_argument("--k2", type=float)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dunkl-lab", description=__doc__.splitlines()[0])
    ap.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="one trajectory as CSV")
    _common(p)
    _law(p)
    p.add_argument("--process", choices=("radial", "laguerre", "jacobi"), default="radial")
    p.add_argument("--beta", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--p", type=float)
    p.add_argument("--q", type=float)
    p.add_argument("--x", help="start point, comma separated")
    p.add_argument("--T", type=float, default=1.0)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--path", type=int, default=0)
    p.add_argument("--every", type=int, default=1)
    p.add_argument("--svg")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("hitting-tail", help="Monte Carlo vs analytic P(T0 > t)")
    _common(p)
    _law(p)
    p.add_argument("--x", required=False)
    p.add_argument("--paths", type=int, default=100_000)
    p.add_argument("--dt", type=float, default=4e-3)
    p.add_argument("--T", type=float, default=1.0)
    p.add_argument("--times", help="comma separated times (default: 5 points up to T)")
    p.add_argument("--z-max", type=float, default=3.0)
    p.add_argument("--svg")
    p.set_defaults(func=cmd_hitting_tail)

    p = sub.add_parser("density-check", help="series vs determinantal density on a slice (k = 1)")
    _common(p, seed=False)
    p.add_argument("--family", default="B", choices=("B", "D", "b", "d"))
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--t", type=float, default=0.7)
    p.add_argument("--x", default="2,1")
    p.add_argument("--y", default="1.5,0.5")
    p.add_argument("--coord", type=int, default=0)
    p.add_argument("--lo", type=float, default=0.8)
    p.add_argument("--hi", type=float, default=3.0)
    p.add_argument("--points", type=int, default=23)
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=cmd_density_check)

    p = sub.add_parser("jacobi-density", help="beta-Jacobi density on a slice (KM cross-check at beta = 2)")
    _common(p, seed=False)
    p.add_argument("--beta", type=float, default=2.0)
    p.add_argument("--r", type=float, default=0.5)
    p.add_argument("--s", type=float, default=0.5)
    p.add_argument("--t", type=float, default=0.5)
    p.add_argument("--theta", default="0.7,0.3")
    p.add_argument("--y", default="0.6,0.2", help="base point of the lambda slice")
    p.add_argument("--coord", type=int, default=0)
    p.add_argument("--lo", type=float, default=0.3)
    p.add_argument("--hi", type=float, default=0.95)
    p.add_argument("--points", type=int, default=14)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--max-degree", type=int, default=None,
                   help="degree cap of the series (default 60 at beta = 2, else 6)")
    p.set_defaults(func=cmd_jacobi_density)

    p = sub.add_parser("laguerre-map", help="KS test of sqrt(lambda) against the B_m radial process")
    _common(p)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--delta", type=float, default=4.0)
    p.add_argument("--x", help="start of the radial process (lambda starts at its square)")
    p.add_argument("--paths", type=int, default=5000)
    p.add_argument("--T", type=float, default=1.0)
    p.add_argument("--dt", type=float, default=2e-3)
    p.set_defaults(func=cmd_laguerre_map)

    p = sub.add_parser("verify", help="run a verification suite and print a pass/fail table")
    _common(p, seed=False)
    p.add_argument("--suite", default="all")
    p.add_argument("--paths", type=int, default=None, help="override Monte Carlo path budgets")
    p.set_defaults(func=cmd_verify)
    ap._subs = sub.choices
    return ap


def parse(argv) -> argparse.Namespace:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "config", None):
        try:
            cfg = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read config {args.config}: {e}") from e
        if not isinstance(cfg, dict):
            raise ConfigError("config file must hold a JSON object")
        sp = ap._subs[args.command]
        known = {a.dest for a in sp._actions}
        unknown = set(cfg) - known
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}")
        sp.set_defaults(**cfg)
        args = ap.parse_args(argv)
    return args


def main(argv=None) -> int:
    try:
        args = parse(sys.argv[1:] if argv is None else argv)
    except SystemExit as e:  # argparse usage errors
        return EXIT_CONFIG if e.code else EXIT_OK
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args)
    except (ConfigError, RootSystemError, ValueError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (NotConverged, PochhammerZero, StepCollapse, RangeViolation) as e:
        print(f"numerical error: {e}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
