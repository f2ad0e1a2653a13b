"""The ``fqilab`` command line interface."""

import argparse
import logging
import os
import sys

import numpy as np
import pandas as pd

from ..fqi import run_fqi
from ..mdp import (
    TablePlan,
    dp_optimal_q,
    evaluate_policy_exact,
    make_env,
    make_plan,
    rollout_return,
)
from ..spectral import eig_sequence, kernel_rate_exponents, l2_minimax_rate, linf_lower_bound
from ..utils import dump_yaml, logger
from ._config import AssumptionConfig, ExperimentConfig, RunConfig, load_config, resolve_output
from ._io import write_results
from ._rates import run_rate_experiment
from ._studies import barron_width_study, run_assumption_checks


def _setup_logging(verbosity):
    if verbosity <= 0:
        return
    level = logging.INFO if verbosity == 1 else logging.DEBUG
    logger.setLevel(level)
    if not any(isinstance(h, logging.StreamHandler) for h in logger.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        logger.addHandler(handler)


def _emit_csv(frame, out):
    if out:
        frame.to_csv(out, index=False, lineterminator="\n")
        print(f"Wrote {out}")
    else:
        frame.to_csv(sys.stdout, index=False, lineterminator="\n")


def cmd_fqi_run(args):
    config = load_config(args.config, RunConfig)
    mdp = make_env(config.env)
    plan = make_plan(mdp, config.plan)
    backend = config.backend.build(config.lam, mdp.state_dim, config.lam_scale)
    fitted, policy = run_fqi(mdp, plan, backend, config.n, config.seed)
    record = {
        "config": config.to_dict(),
        "lambda": fitted.lam,
        "simulator_calls": fitted.simulator_calls,
        "steps": [
            {"h": h, **(fitted.diagnostics[h - 1] or {})} for h in range(1, mdp.horizon + 1)
        ],
    }
    # Wall times make records differ between reruns
    for step in record["steps"]:
        step.pop("seconds", None)
    if isinstance(plan, TablePlan):
        init = plan.state_marginal(1)
        value = evaluate_policy_exact(mdp, policy, init)
        optimal = evaluate_policy_exact(mdp, dp_optimal_q(mdp).greedy_policy(), init)
        record["evaluation"] = {"return": value, "optimal": optimal, "gap": optimal - value}
    else:
        mean, stderr = rollout_return(mdp, policy, config.episodes, config.seed)
        record["evaluation"] = {"return": mean, "stderr": stderr}
    directory = resolve_output(args.out or config.output, "runs")
    path = os.path.join(directory, "run.yaml")
    text = dump_yaml(record, path)
    print(text, end="")
    print(f"# written to {path}")
    return 0


def cmd_rates(args):
    config = load_config(args.config, ExperimentConfig)
    if args.out:
        config.output = args.out
    result = run_rate_experiment(config)
    directory = config.output_dir()
    write_results(result, directory)
    print(result.aggregate.to_string(index=False))
    if result.slope is None:
        print("slope: n/a (fewer than two positive medians)")
    else:
        print(f"slope: {result.slope:.4f} +- {result.half_width:.4f}")
    if result.failures:
        print(f"{len(result.failures)} cells failed, see metadata.yaml")
    print(f"Results written to {directory}")
    return 1 if len(result.failures) == len(result.rows) and len(result.rows) else 0


def cmd_assumptions(args):
    config = load_config(args.config, AssumptionConfig)
    if args.out:
        config.output = args.out
    tables = run_assumption_checks(config)
    rad = tables["rademacher"]
    for ball, group in rad.groupby("ball"):
        print(f"{ball}: {int(group['holds'].sum())}/{len(group)} within the envelope")
    conc = tables["concentration"]
    if len(conc):
        print(conc.groupby("env")[["kappa"]].first().to_string())
    print(f"Results written to {config.output_dir()}")
    return 0


def cmd_spectral_eigs(args):
    seq = eig_sequence(args.kernel, args.dim, args.count)
    _emit_csv(seq.to_frame(), args.out)
    return 0


def _size_grid(args):
    if args.n:
        return sorted(set(args.n))
    grid = np.geomspace(args.n_min, args.n_max, args.points)
    return sorted(set(int(round(n)) for n in grid))


def cmd_spectral_bound(args):
    sizes = _size_grid(args)
    if args.mode == "linf":
        seq = eig_sequence(args.kernel, args.dim, args.count)
        bounds = [linf_lower_bound(seq, n, tail=args.tail) for n in sizes]
    else:
        alpha = kernel_rate_exponents(args.kernel, args.dim)["alpha"]
        bounds = [l2_minimax_rate(alpha, n) for n in sizes]
    _emit_csv(pd.DataFrame({"n": sizes, "bound": bounds}), args.out)
    return 0


def cmd_barron_width(args):
    table, slope = barron_width_study(
        seed=args.seed, dim=args.dim, widths=args.widths, norm_budget=args.budget
    )
    _emit_csv(table, args.out)
    if slope is not None:
        print(f"# slope: {slope:.4f}", file=sys.stderr)
    return 0


def make_parser():
    parser = argparse.ArgumentParser(
        prog="fqilab",
        description="Regularized fitted Q-iteration experiments and kernel spectra.",
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="Log progress (-vv for debug)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fqi = sub.add_parser("fqi", help="Single FQI runs")
    fqi_sub = fqi.add_subparsers(dest="fqi_command", required=True)
    run = fqi_sub.add_parser("run", help="Run FQI once and evaluate the policy")
    run.add_argument("--config", required=True, help="YAML run config")
    run.add_argument("--out", default=None, help="Output directory")
    run.set_defaults(func=cmd_fqi_run)

    rates = sub.add_parser("rates", help="Gap versus sample size experiment")
    rates.add_argument("--config", required=True, help="YAML experiment config")
    rates.add_argument("--out", default=None, help="Output directory")
    rates.set_defaults(func=cmd_rates)

    assumptions = sub.add_parser("assumptions", help="Rademacher and concentration checks")
    assumptions.add_argument("--config", required=True, help="YAML assumption config")
    assumptions.add_argument("--out", default=None, help="Output directory")
    assumptions.set_defaults(func=cmd_assumptions)

    spectral = sub.add_parser("spectral", help="Kernel spectra on the sphere")
    spectral_sub = spectral.add_subparsers(dest="spectral_command", required=True)
    eigs = spectral_sub.add_parser("eigs", help="Sorted Mercer eigenvalues as CSV")
    eigs.add_argument("--kernel", default="lap", help="lap, ntk or arccos")
    eigs.add_argument("--dim", type=int, default=3, help="Ambient dimension d")
    eigs.add_argument("--count", type=int, default=2000, help="Number of eigenvalues")
    eigs.add_argument("--out", default=None, help="CSV file (stdout by default)")
    eigs.set_defaults(func=cmd_spectral_eigs)

    bound = spectral_sub.add_parser("bound", help="Lower bounds as (n, bound) CSV")
    bound.add_argument("--mode", choices=("linf", "l2"), default="linf")
    bound.add_argument("--kernel", default="lap", help="lap, ntk or arccos")
    bound.add_argument("--dim", type=int, default=3, help="Ambient dimension d")
    bound.add_argument("--count", type=int, default=4000, help="Eigenvalues to compute")
    bound.add_argument("--tail", choices=("powerlaw", "none"), default="powerlaw")
    bound.add_argument("--n", type=int, nargs="+", default=None, help="Explicit sizes")
    bound.add_argument("--n-min", type=int, default=100)
    bound.add_argument("--n-max", type=int, default=1000)
    bound.add_argument("--points", type=int, default=10)
    bound.add_argument("--out", default=None, help="CSV file (stdout by default)")
    bound.set_defaults(func=cmd_spectral_bound)

    barron = sub.add_parser("barron-width", help="Width-truncation errors of a Barron target")
    barron.add_argument("--seed", type=int, default=0)
    barron.add_argument("--dim", type=int, default=8)
    barron.add_argument("--budget", type=float, default=1.0, help="Path norm of the target")
    barron.add_argument(
        "--widths", type=int, nargs="+", default=[2**k for k in range(4, 13)]
    )
    barron.add_argument("--out", default=None, help="CSV file (stdout by default)")
    barron.set_defaults(func=cmd_barron_width)
    return parser


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    _setup_logging(args.verbose)
    try:
        return args.func(args)
    except (ValueError, TypeError, OSError, RuntimeError) as err:
        logger.debug("Command failed", exc_info=True)
        print(f"fqilab: error: {err}", file=sys.stderr)
        return 2
