"""Command-line entry point: ``morseweyl <subcommand> ...`` or ``python -m morseweyl``.

Exit codes: 0 success/pass, 1 experiment fail (or inconclusive),
2 usage error, 3 numerical error.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import harness
from .asymptotics import AsymptoticModel
from .errors import NumericalError, ParseError
from .oscillation import CountOptions, count_below, eigenvalue
from .potentials import DomainSpec, parse_potential
from .weyl import weyl_count
from .zeta import count_zeros_below, load_zeros

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

# config-file key -> (type, default)
CONFIG_KEYS = {
    "rel_tol": (float, CountOptions.rel_tol),
    "abs_tol": (float, CountOptions.abs_tol),
    "tail_phase_budget": (float, CountOptions.tail_phase_budget),
    "max_span": (float, CountOptions.max_span),
    "cost_guard": (int, CountOptions.max_count),
    "out_dir": (str, "."),
    "workers": (int, 1),
}


def read_config(path) -> dict:
    """``key = value`` lines, ``#`` comments; unknown keys raise :class:`ParseError`."""
    cfg = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, eq, val = line.partition("=")
            key = key.strip()
            if not eq:
                raise ParseError(f"{path}:{lineno}: expected 'key = value'")
            if key not in CONFIG_KEYS:
                raise ParseError(f"{path}:{lineno}: unknown key {key!r}; known: {sorted(CONFIG_KEYS)}")
            conv = CONFIG_KEYS[key][0]
            try:
                cfg[key] = conv(val.strip())
            except ValueError:
                raise ParseError(f"{path}:{lineno}: bad value for {key}: {val.strip()!r}") from None
    return cfg


def _settings(args) -> dict:
    cfg = {k: d for k, (_, d) in CONFIG_KEYS.items()}
    if args.config:
        cfg.update(read_config(args.config))
    for key in CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            cfg[key] = flag
    return cfg


def _count_options(cfg) -> CountOptions:
    guard = cfg["cost_guard"]
    return CountOptions(
        rel_tol=cfg["rel_tol"],
        abs_tol=cfg["abs_tol"],
        tail_phase_budget=cfg["tail_phase_budget"],
        max_span=cfg["max_span"],
        max_count=None if guard is not None and guard <= 0 else guard,
    )


def _add_tolerance_flags(sp):
    g = sp.add_argument_group("numerics (override the config file)")
    g.add_argument("--rel-tol", dest="rel_tol", type=float, help="ODE relative tolerance (default 1e-8)")
    g.add_argument("--abs-tol", dest="abs_tol", type=float, help="ODE absolute tolerance (default 1e-10)")
    g.add_argument("--tail-phase-budget", dest="tail_phase_budget", type=float,
                   help="allowed phase gain after truncation, radians (default pi/100)")
    g.add_argument("--max-span", dest="max_span", type=float, help="cap on integration length (default 200)")
    g.add_argument("--cost-guard", dest="cost_guard", type=int,
                   help="refuse counts above this many eigenvalues; 0 disables (default 5000)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="morseweyl", description=__doc__.splitlines()[0])
    ap.add_argument("--config", help="file of 'key = value' lines overriding defaults")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("count", help="count eigenvalues below T by Sturm oscillation")
    sp.add_argument("--potential", required=True, help="potential spec, e.g. morse:k=0")
    sp.add_argument("--T", dest="T", type=float, required=True, help="threshold T")
    sp.add_argument("--x0", type=float, default=0.0, help="left endpoint (default 0)")
    _add_tolerance_flags(sp)

    sp = sub.add_parser("weyl", help="evaluate the Weyl-law integral")
    sp.add_argument("--potential", required=True, help="potential spec")
    sp.add_argument("--T", dest="T", type=float, required=True, help="threshold T")
    sp.add_argument("--x0", type=float, default=0.0, help="left endpoint (default 0)")

    sp = sub.add_parser("eig", help="n-th Dirichlet eigenvalue (n=0 is the ground state)")
    sp.add_argument("--potential", required=True, help="potential spec")
    sp.add_argument("--n", type=int, required=True, help="eigenvalue index, from 0")
    sp.add_argument("--x0", type=float, default=0.0, help="left endpoint (default 0)")
    _add_tolerance_flags(sp)

    sp = sub.add_parser("sweep", help="run a named experiment over a T grid, write CSV + verdict")
    sp.add_argument("--experiment", required=True, choices=harness.EXPERIMENTS, help="experiment name")
    sp.add_argument("--grid", default="log:1e2:1e5:5", help="log:<lo>:<hi>:<per-decade> (default log:1e2:1e5:5)")
    sp.add_argument("--x0", type=float, default=0.0, help="left endpoint (default 0)")
    sp.add_argument("--potential", help="override the experiment's default potential")
    sp.add_argument("--out", dest="out_dir", help="output directory (default: config out_dir or .)")
    sp.add_argument("--no-osc", action="store_true", help="skip oscillation counts (Weyl values only)")
    sp.add_argument("--workers", type=int, help="parallel worker processes (default 1)")
    _add_tolerance_flags(sp)

    sp = sub.add_parser("zeta", help="compare a zeta-zero table with a counting model")
    sp.add_argument("--zeros-file", required=True, help="one ordinate per line, '#' comments")
    sp.add_argument("--model", choices=("paper", "classical"), default="paper", help="counting model (default paper)")
    sp.add_argument("--T-max", dest="T_max", type=float, required=True, help="largest T in the table")
    sp.add_argument("--T-min", dest="T_min", type=float, default=10.0, help="smallest T (default 10)")
    sp.add_argument("--step", type=float, default=10.0, help="T spacing (default 10)")
    return ap


def _print_fields(obj, names, out):
    for name in names:
        val = getattr(obj, name)
        print(f"{name} = {val!r}" if isinstance(val, float) else f"{name} = {val}", file=out)


def _cmd_count(args, cfg, out):
    p = parse_potential(args.potential)
    res = count_below(p, args.T, DomainSpec(args.x0), _count_options(cfg))
    _print_fields(res, ("count", "final_phase", "t_stop", "tail_bound"), out)
    return EXIT_OK


def _cmd_weyl(args, cfg, out):
    p = parse_potential(args.potential)
    res = weyl_count(p, args.T, args.x0)
    _print_fields(res, ("value", "quad_error", "turning_point"), out)
    return EXIT_OK


def _cmd_eig(args, cfg, out):
    p = parse_potential(args.potential)
    lam = eigenvalue(p, args.n, DomainSpec(args.x0), _count_options(cfg))
    print(f"eigenvalue = {lam!r}", file=out)
    return EXIT_OK


def _cmd_sweep(args, cfg, out):
    grid = harness.parse_grid(args.grid)
    pot = parse_potential(args.potential) if args.potential else None
    spec = harness.ExperimentSpec(args.experiment, grid, pot, args.x0, oscillation=not args.no_osc)
    records = harness.run_sweep(spec, _count_options(cfg), workers=cfg["workers"])
    v = harness.verdict(records, spec)
    csv_path, json_path = harness.write_report(records, v, cfg["out_dir"])
    slope = "n/a" if v.slope is None else f"{v.slope!r} +/- {v.slope_ci!r}"
    print(f"experiment = {spec.name}", file=out)
    print(f"potential = {spec.potential.spec}", file=out)
    print(f"status = {v.status}", file=out)
    print(f"slope = {slope}", file=out)
    print(f"csv = {csv_path}", file=out)
    print(f"verdict = {json_path}", file=out)
    return EXIT_OK if v.status == "pass" else EXIT_FAIL


def _cmd_zeta(args, cfg, out):
    z = load_zeros(args.zeros_file)
    if z.empty:
        print("warning: empty zero table", file=sys.stderr)
    m = AsymptoticModel.zeta_paper() if args.model == "paper" else AsymptoticModel.zeta_classical()
    if args.T_min <= 1 or args.step <= 0 or args.T_max < args.T_min:
        raise ParseError("need 1 < T-min <= T-max and step > 0")
    n = int(math.floor((args.T_max - args.T_min) / args.step + 1e-9)) + 1
    Ts = [args.T_min + i * args.step for i in range(n)]
    rows = harness.zeta_comparison(z, Ts, m)
    print(f"# zeros: {len(z)} from {z.source}", file=out)
    print(f"# model: zeta_{args.model}; Z(T) counts zeros 1/2 +/- i*gamma with gamma < T", file=out)
    print(f"{'T':>12} {'N_one':>6} {'Z(T)':>6} {'model':>24} {'deviation':>24} {'band':>8} within", file=out)
    worst = 0.0
    outside = 0
    for T, Z, model, dev, band in rows:
        inside = abs(dev) <= band
        outside += not inside
        worst = max(worst, abs(dev))
        print(f"{T!r:>12} {count_zeros_below(z, T):>6d} {Z:>6d} {model!r:>24} {dev!r:>24} {band:8.4f} "
              f"{'yes' if inside else 'no'}", file=out)
    print(f"# max |deviation| = {worst!r}; rows outside 3 + log T band: {outside}", file=out)
    return EXIT_OK


_COMMANDS = {
    "count": _cmd_count,
    "weyl": _cmd_weyl,
    "eig": _cmd_eig,
    "sweep": _cmd_sweep,
    "zeta": _cmd_zeta,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _settings(args)
        return _COMMANDS[args.command](args, cfg, out)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
