"""Command-line front end: ``cubic-response <command> [options]``.

Every command prints an envelope ``{command, inputs, results, seed, version}``
as JSON (full precision), or the tabular part of ``results`` as CSV with four
significant digits. Exit status is 0 on success, 2 on invalid arguments and 1
when a numerical routine fails.

The default seed is 42 and can be overridden with the ``CUBIC_RESPONSE_SEED``
environment variable; an explicit ``--seed`` always wins.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import asdict

import numpy as np
from scipy import stats

from . import __version__
from . import fluid_model, limit_chain, packet_sim, response
from ._roots import MonotonicityError
from .core_model import CubicParams, NetworkPath

SEED_ENV = "CUBIC_RESPONSE_SEED"
CSV_DIGITS = 4


class UsageError(Exception):
    """Argument values outside a command's domain."""


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 42
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _float_list(text: str) -> list[float]:
    items = [s for s in text.replace(",", " ").split() if s]
    try:
        return [float(s) for s in items]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got {text!r}") from None


def _params(args) -> CubicParams:
    return CubicParams(args.C, args.beta)


def _require(cond: bool, message: str):
    if not cond:
        raise UsageError(message)


# --- commands --------------------------------------------------------------
# Each returns (inputs, results, seed_or_None, csv_rows). csv_rows is a list of
# dicts sharing the same keys.


def cmd_fluid(args):
    params, path = _params(args), NetworkPath(args.rtt, args.p)
    sol = fluid_model.solve(params, path)
    inputs = {"C": args.C, "beta": args.beta, "rtt": args.rtt, "p": args.p}
    results = asdict(sol)
    # the comparison tables floor the fluid window at the Reno law
    results["mean_window_with_reno"] = response.mean_window_det(params, args.rtt, args.p, args.reno_coefficient)
    return inputs, results, None, [results]


def cmd_iterate(args):
    _require(args.iters >= 0, "--iters must be >= 0")
    _require(all(x >= 1 for x in args.x0), "--x0 values must be >= 1")
    params, path = _params(args), NetworkPath(args.rtt, args.p)
    x_star = fluid_model.fixed_point(params, path)
    traces = [fluid_model.iterate_loss_map(params, path, x0, args.iters) for x0 in args.x0]
    inputs = {"C": args.C, "beta": args.beta, "rtt": args.rtt, "p": args.p, "x0": args.x0, "iters": args.iters}
    results = {"x_star": x_star, "traces": [{"x0": x0, "iterates": t} for x0, t in zip(args.x0, traces)]}
    rows = []
    for k in range(args.iters + 1):
        row = {"k": k}
        for x0, t in zip(args.x0, traces):
            row[f"x0={x0:g}"] = t[k]
        row["x_star"] = x_star
        rows.append(row)
    return inputs, results, None, rows


def cmd_simulate(args):
    _require(args.rtts >= 1, "--rtts must be >= 1")
    _require(args.initial_window >= 1, "--initial-window must be >= 1")
    seed = default_seed() if args.seed is None else args.seed
    params = _params(args)
    path = NetworkPath(args.rtt, args.p, args.wmax)
    config = packet_sim.SimConfig(
        params,
        path,
        n_rtts=args.rtts,
        seed=seed,
        initial_window=args.initial_window,
        reno_mode=args.reno,
        test_incremented=args.test_incremented,
        record_epochs=args.epochs,
    )
    stats_ = packet_sim.simulate(config)
    inputs = {
        "C": args.C, "beta": args.beta, "rtt": args.rtt, "p": args.p, "wmax": args.wmax,
        "rtts": args.rtts, "reno": args.reno, "initial_window": args.initial_window,
        "test_incremented": args.test_incremented,
    }
    results = stats_.to_dict(include_epochs=args.epochs)
    row = {k: v for k, v in results.items() if k != "epochs"}
    return inputs, results, seed, [row]


def cmd_limit_mc(args):
    _require(args.n >= 1, "--n must be >= 1")
    _require(args.burnin >= 0, "--burnin must be >= 0")
    _require(args.v0 >= 0, "--v0 must be >= 0")
    _require(args.rtt > 0, "--rtt must be positive")
    seed = default_seed() if args.seed is None else args.seed
    law = limit_chain.GbarLaw(_params(args), args.rtt, args.exponent)
    est = limit_chain.estimate_mean_gbar(law, args.n, args.burnin, seed, args.v0)
    inputs = {"C": args.C, "beta": args.beta, "rtt": args.rtt, "n": args.n, "burnin": args.burnin,
              "v0": args.v0, "exponent": args.exponent}
    results = asdict(est)
    return inputs, results, seed, [results]


def cmd_table(args):
    _require(len(args.p_list) > 0, "--p-list must not be empty")
    _require(len(args.rtt_list) > 0, "--rtt-list must not be empty")
    _require(len(args.methods) > 0, "--methods must not be empty")
    for m in args.methods:
        _require(m in response.METHODS, f"unknown method {m!r}; choose from {', '.join(response.METHODS)}")
    for p in args.p_list:
        _require(0 < p < 1, f"p values must lie in (0, 1), got {p!r}")
    for r in args.rtt_list:
        _require(r > 0, f"RTT values must be positive, got {r!r}")
    _require(args.rtts >= 1, "--rtts must be >= 1")
    _require(args.threads is None or args.threads >= 1, "--threads must be >= 1")
    params = _params(args)
    uses_sim = "packet_sim" in args.methods
    seed = (default_seed() if args.seed is None else args.seed) if uses_sim else None
    rows = response.generate_table(
        args.p_list,
        args.rtt_list,
        args.methods,
        params=params,
        coefficient=args.coefficient,
        reno_coefficient=args.reno_coefficient,
        quantity=args.quantity,
        sim_defaults={"n_rtts": args.rtts, "seed": seed, "w_max": args.wmax} if uses_sim else None,
        threads=args.threads,
    )
    coefficient = args.coefficient if args.coefficient is not None else response.default_coefficient(params)
    inputs = {
        "C": args.C, "beta": args.beta, "p_list": args.p_list, "rtt_list": args.rtt_list,
        "methods": args.methods, "quantity": args.quantity, "coefficient": coefficient,
        "reno_coefficient": args.reno_coefficient,
    }
    if uses_sim:
        inputs.update({"rtts": args.rtts, "wmax": args.wmax})
    return inputs, {"rows": rows}, seed, rows


def cmd_bound(args):
    _require(len(args.y_list) > 0, "--y-list must not be empty")
    _require(all(y >= 0 for y in args.y_list), "--y-list values must be >= 0")
    _require(args.rtt > 0, "--rtt must be positive")
    law = limit_chain.GbarLaw(_params(args), args.rtt)
    gamma = limit_chain.gamma_constant(law.params)
    points = []
    for y in args.y_list:
        points.append({
            "y": y,
            "x_star": limit_chain.bound_xstar_of_y(law, y) if y > 0 else 0.0,
            "H": limit_chain.h_bound(law, y),
        })
    xs = np.linspace(0.0, args.grid_xmax, 401)
    ys = np.linspace(0.0, args.grid_ymax, 401)
    gap = np.max(limit_chain.gbar_survival(law, xs[:, None], ys[None, :]) - limit_chain.h_bound(law, ys)[None, :])
    inputs = {"C": args.C, "beta": args.beta, "rtt": args.rtt, "y_list": args.y_list}
    results = {
        "gamma": gamma,
        "points": points,
        "dominance_check": {
            "x_range": [0.0, args.grid_xmax],
            "y_range": [0.0, args.grid_ymax],
            "grid": [len(xs), len(ys)],
            "max_survival_minus_H": float(gap),
            "holds": bool(gap <= 1e-12),
        },
    }
    return inputs, results, None, points


def cmd_ks(args):
    _require(args.samples >= 1, "--samples must be >= 1")
    _require(len(args.p) > 0, "--p must not be empty")
    for p in args.p:
        _require(0 < p < 1, f"p values must lie in (0, 1), got {p!r}")
        _require(args.x > p ** 0.75, f"--x must exceed p^(3/4) = {p ** 0.75:.4g}")
    seed = default_seed() if args.seed is None else args.seed
    params = _params(args)
    law = limit_chain.GbarLaw(params, args.rtt)
    rows = []
    for p in sorted(args.p, reverse=True):
        y = packet_sim.empirical_scaled_g(params, args.rtt, p, args.x, args.samples, seed, args.test_incremented)
        lattice = packet_sim.lattice_ks_distance(y, p ** 0.25, lambda t: limit_chain.gbar_survival(law, args.x, t))
        plain = stats.kstest(y, limit_chain.gbar_cdf(law, args.x)).statistic
        rows.append({"p": p, "lattice_ks": lattice, "ks": float(plain)})
    inputs = {"C": args.C, "beta": args.beta, "rtt": args.rtt, "p": args.p, "x": args.x,
              "samples": args.samples, "test_incremented": args.test_incremented}
    return inputs, {"rows": rows}, seed, rows


# --- parser ----------------------------------------------------------------


def _add_protocol(p):
    p.add_argument("--C", type=float, default=0.4, help="cubic growth constant (default 0.4)")
    p.add_argument("--beta", type=float, default=0.3, help="multiplicative decrease (default 0.3)")


def _add_common(p, tabular_default="json"):
    p.add_argument("--format", choices=("json", "csv"), default=tabular_default)
    p.add_argument("--out", help="write output to this file instead of stdout")
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads for parallel parts; results do not depend on it")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cubic-response", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fluid", help="fixed point, period and mean window of the fluid model")
    _add_protocol(p)
    p.add_argument("--rtt", type=float, default=1.0)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--reno-coefficient", type=float, default=response.RENO_COEFFICIENT)
    _add_common(p)
    p.set_defaults(func=cmd_fluid)

    p = sub.add_parser("iterate", help="orbit of the fluid loss map, as a CSV trace")
    _add_protocol(p)
    p.add_argument("--rtt", type=float, default=1.0)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--x0", type=float, nargs="+", default=[1.0, 100.0], help="starting pre-loss windows")
    p.add_argument("--iters", type=int, default=50)
    _add_common(p, "csv")
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("simulate", help="RTT-level simulation with random drops")
    _add_protocol(p)
    p.add_argument("--rtt", type=float, default=1.0)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--wmax", type=int, default=None)
    p.add_argument("--rtts", type=int, default=10 ** 6, help="number of simulated RTTs")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--reno", action="store_true", help="grow by the larger of the cubic and Reno laws")
    p.add_argument("--initial-window", type=int, default=1)
    p.add_argument("--test-incremented", action="store_true",
                   help="apply the loss test to the next RTT's window instead of the one sent")
    p.add_argument("--epochs", action="store_true", help="include every loss epoch in the JSON output")
    _add_common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("limit-mc", help="Monte-Carlo mean of the limiting inter-loss time")
    _add_protocol(p)
    p.add_argument("--rtt", type=float, default=1.0)
    p.add_argument("--n", type=int, default=10_000)
    p.add_argument("--burnin", type=int, default=limit_chain.DEFAULT_BURN_IN)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--v0", type=float, default=0.0)
    p.add_argument("--exponent", choices=limit_chain.EXPONENTS, default="printed")
    _add_common(p)
    p.set_defaults(func=cmd_limit_mc)

    p = sub.add_parser("table", help="response-function comparison table")
    _add_protocol(p)
    p.add_argument("--p-list", type=_float_list, required=True)
    p.add_argument("--rtt-list", type=_float_list, required=True)
    p.add_argument("--methods", type=lambda s: [m for m in s.replace(",", " ").split() if m],
                   default=["det_fluid", "approx_markov"])
    p.add_argument("--quantity", choices=("window", "goodput"), default="window")
    p.add_argument("--coefficient", type=float, default=None,
                   help="override the approximate-model coefficient")
    p.add_argument("--reno-coefficient", type=float, default=response.RENO_COEFFICIENT)
    p.add_argument("--rtts", type=int, default=10 ** 6, help="RTTs per packet_sim cell")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--wmax", type=int, default=None)
    _add_common(p, "csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("bound", help="envelope constant gamma and H(y)")
    _add_protocol(p)
    p.add_argument("--rtt", type=float, default=1.0)
    p.add_argument("--y-list", type=_float_list, default=[0.0, 0.5, 1.0, 2.0, 3.0])
    p.add_argument("--grid-xmax", type=float, default=100.0)
    p.add_argument("--grid-ymax", type=float, default=5.0)
    _add_common(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("ks", help="distance between simulated and limiting inter-loss laws")
    _add_protocol(p)
    p.add_argument("--rtt", type=float, default=1.0)
    p.add_argument("--p", type=_float_list, required=True, help="one or more drop probabilities")
    p.add_argument("--x", type=float, default=1.0, help="scaled post-loss window")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--test-incremented", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_ks)
    return parser


# --- output ----------------------------------------------------------------


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.generic):
        obj = obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return None if math.isnan(obj) else ("Infinity" if obj > 0 else "-Infinity")
    return obj


def render(command: str, inputs: dict, results, seed, rows, fmt: str) -> str:
    if fmt == "json":
        envelope = {"command": command, "inputs": inputs, "results": results, "seed": seed, "version": __version__}
        return json.dumps(_jsonable(envelope), indent=2, allow_nan=False) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    columns = list(rows[0]) if rows else []
    writer.writerow(columns)
    for row in rows:
        writer.writerow([f"{v:.{CSV_DIGITS}g}" if isinstance(v, float) else v for v in (row[c] for c in columns)])
    return buf.getvalue()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", None) is not None and args.threads < 1:
        parser.error("--threads must be >= 1")
    try:
        inputs, results, seed, rows = args.func(args)
    except (UsageError, ValueError) as exc:
        # argument-domain problems, including ValueError from the dataclass checks
        parser.error(f"{args.command}: {exc}")
    except (MonotonicityError, ArithmeticError, FloatingPointError) as exc:
        print(f"cubic-response {args.command}: numerical failure: {exc}", file=sys.stderr)
        return 1
    text = render(args.command, inputs, results, seed, rows, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
