"""Command-line front end: scenario files in, CSV on stdout.

Every subcommand writes self-describing CSV (header row first) to
stdout and keeps diagnostics on stderr, so output can be piped straight
into a generic CSV reader.  Floats are printed with repr, which
round-trips exactly; infinite values print as "infinity".  The exit
status is 0 only when the requested computation ran to completion.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from .chernoff import chernoff_divergence, chernoff_information
from .errors import ConfigurationError, DegenerateModelError
from .exponent import group_count_bound, optimize_weights, vanishing_rate_records
from .gaussian import context_gain_table
from .lfp import solve_lfp
from .scenario import load_lfp_instance, load_scenario
from .simulate import SimConfig, estimate_exponent

THREADS_ENV_VAR = "ARTIFACT_THREADS"


def _fmt(value: float) -> str:
    if math.isinf(value):
        return "infinity" if value > 0 else "-infinity"
    return repr(float(value))


def _parse_pair(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"--pair must look like S,X1,X2, got {text!r}")
    try:
        s, x1, x2 = (int(p) for p in parts)
    except ValueError:
        raise ValueError(f"--pair must hold three integers, got {text!r}") from None
    return s, x1, x2


def _parse_taus(text: str) -> list[float]:
    try:
        return [float(p) for p in text.split(",") if p.strip() != ""]
    except ValueError:
        raise ValueError(f"--taus must be a comma-separated float list, got {text!r}") from None


def _parse_grid(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"--grid must look like A:B:N, got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
        n = int(parts[2])
    except ValueError:
        raise ValueError(f"--grid must look like A:B:N with numeric A, B, N, got {text!r}") from None
    if n < 1:
        raise ValueError(f"--grid needs at least one point, got {n}")
    if n == 1:
        return [lo]
    if hi < lo:
        raise ValueError(f"--grid upper end {hi!r} is below the lower end {lo!r}")
    return [lo + (hi - lo) * k / (n - 1) for k in range(n)]


def _thread_count() -> int:
    raw = os.environ.get(THREADS_ENV_VAR, "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"{THREADS_ENV_VAR} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ValueError(f"{THREADS_ENV_VAR} must be a positive integer, got {raw!r}")
    return n


def cmd_divergence(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    s, x1, x2 = _parse_pair(args.pair)
    rows = scenario.observation.rows
    if not (0 <= s < rows.shape[1] and 0 <= x1 < rows.shape[0] and 0 <= x2 < rows.shape[0]):
        raise ConfigurationError(
            f"pair (s={s}, x1={x1}, x2={x2}) is outside the scenario's "
            f"(x, s) alphabet ({rows.shape[0]}, {rows.shape[1]})")
    if x1 == x2:
        raise ConfigurationError("pair must name two distinct source letters")
    if args.curve < 0:
        raise ValueError(f"--curve must be nonnegative, got {args.curve}")
    p0, p1 = rows[x1, s], rows[x2, s]
    result = chernoff_information(p0, p1)
    print("value,lambda_star")
    print(f"{_fmt(result.value)},{_fmt(result.lambda_star)}")
    if args.curve > 0:
        print("lambda,divergence")
        for k in range(args.curve + 1):
            lam = k / args.curve
            print(f"{_fmt(lam)},{_fmt(chernoff_divergence(p0, p1, lam))}")
    return 0


def cmd_optimize(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    if scenario.dictionary is None:
        raise ConfigurationError(
            f"{args.scenario}: optimize needs a [[dictionary]] section")
    taus = _parse_taus(args.taus)
    records = vanishing_rate_records(scenario.source, scenario.observation,
                                     scenario.dictionary, taus)
    print("tau,ratio,support,worst_triple")
    for tau, plan, report in records:
        triple = ":".join(str(k) for k in report.worst_triple)
        print(f"{_fmt(tau)},{_fmt(report.ratio)},{plan.group_count},{triple}")
    last_plan = records[-1][1]
    bound = group_count_bound(scenario.source.x_size, scenario.source.s_size)
    print(f"final support size {last_plan.group_count} of group count bound {bound}",
          file=sys.stderr)
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    if scenario.dictionary is None:
        raise ConfigurationError(
            f"{args.scenario}: simulate needs a [[dictionary]] section")
    if scenario.simulation is None:
        raise ConfigurationError(
            f"{args.scenario}: simulate needs a [simulation] section")
    threads = _thread_count()
    plan, report = optimize_weights(scenario.source, scenario.observation,
                                    scenario.dictionary)
    settings = scenario.simulation
    config = SimConfig(source=scenario.source, observation=scenario.observation,
                       plan=plan, l_values=settings.l_values,
                       trials=settings.trials, seed=settings.seed)
    print(f"plan: {plan.group_count} group(s), worst-pair exponent "
          f"{_fmt(report.numerator)} per sensor, ratio {_fmt(report.ratio)}",
          file=sys.stderr)
    result = estimate_exponent(config, n_threads=threads)
    print("pool_size,error_count,trials,p_e_hat")
    for pool_size, errors, trials, p_e_hat in result.per_l:
        print(f"{pool_size},{errors},{trials},{_fmt(p_e_hat)}")
    print("fitted_slope,slope_stderr")
    print(f"{_fmt(result.fitted_slope)},{_fmt(result.slope_stderr)}")
    return 0


def cmd_gaussian(args: argparse.Namespace) -> int:
    if args.sigma_s2 < 0.0:
        raise ValueError(f"--sigma-s2 must be nonnegative, got {args.sigma_s2!r}")
    grid = _parse_grid(args.grid)
    print("sigma_n2,alpha_with,alpha_without")
    for sigma_n2, with_ctx, without_ctx in context_gain_table(args.sigma_s2, grid):
        print(f"{_fmt(sigma_n2)},{_fmt(with_ctx)},{_fmt(without_ctx)}")
    return 0


def cmd_lfp(args: argparse.Namespace) -> int:
    instance = load_lfp_instance(args.instance)
    solution = solve_lfp(instance, tol=args.tol)
    print("gamma,support_size,weights")
    weights = ":".join(_fmt(w) for w in solution.weights)
    print(f"{_fmt(solution.gamma)},{solution.support_size},{weights}")
    return 0


_COMMANDS = {
    "divergence": cmd_divergence,
    "optimize": cmd_optimize,
    "simulate": cmd_simulate,
    "gaussian": cmd_gaussian,
    "lfp": cmd_lfp,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="artifact",
        description="Error exponents per unit rate for quantize-and-fuse "
                    "sensor networks with decoder context.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("divergence",
                       help="best-tilt divergence between two observation rows")
    p.add_argument("scenario", help="scenario TOML file")
    p.add_argument("--pair", required=True, metavar="S,X1,X2",
                   help="context letter and the two source letters to compare")
    p.add_argument("--curve", type=int, default=0, metavar="N",
                   help="also print the divergence at N+1 evenly spaced tilts")

    p = sub.add_parser("optimize",
                       help="optimize group weights, optionally along a softening path")
    p.add_argument("scenario", help="scenario TOML file with a [[dictionary]] section")
    p.add_argument("--taus", default="1.0", metavar="T1,T2,...",
                   help="strictly decreasing softening levels in (0, 1] (default 1.0)")

    p = sub.add_parser("simulate",
                       help="Monte-Carlo error rates and fitted exponent for the "
                            "optimized plan")
    p.add_argument("scenario",
                   help="scenario TOML file with [[dictionary]] and [simulation]")

    p = sub.add_parser("gaussian",
                       help="closed-form vanishing-rate exponents for the scalar "
                            "Gaussian model")
    p.add_argument("--sigma-s2", type=float, required=True, metavar="V",
                   help="variance of the context shift")
    p.add_argument("--grid", required=True, metavar="A:B:N",
                   help="N sensing-noise variances evenly spaced over [A, B]")

    p = sub.add_parser("lfp", help="solve a max-min ratio program from a file")
    p.add_argument("instance", help="ratio-program TOML file")
    p.add_argument("--tol", type=float, default=1e-9,
                   help="bisection width tolerance (default 1e-9)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ConfigurationError, DegenerateModelError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
