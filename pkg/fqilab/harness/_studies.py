"""Empirical checks of the assumptions, and the width-truncation study."""

import os

import numpy as np
import pandas as pd

from ..kernels import make_kernel
from ..mdp import concentration_coeffs, make_env, make_plan
from ..networks import make_barron_target, relu
from ..utils import logger, stream_rng, uniform_sphere, STREAM_RADEMACHER
from ._metrics import fit_loglog_slope
from ._rademacher import KernelBall, PathNormBall, estimate_rademacher


RADEMACHER_COLUMNS = (
    "instance", "ball", "n", "radius", "value", "stderr", "envelope", "bound", "holds"
)  # fmt: skip
CONCENTRATION_COLUMNS = ("env", "h", "kappa_h", "kappa", "exact")


def rademacher_checks(config):
    """Kernel-ball and path-norm-ball estimates on random point sets.

    An instance passes when the estimate is within both the closed-form
    bound and the Monte Carlo envelope, plus three standard errors.
    """
    kernel = make_kernel(config.kernel, dim=config.dim)
    records = []
    for i in range(config.instances):
        seed = config.master_seed + i
        rng = stream_rng(seed, 0, 0, STREAM_RADEMACHER)
        points = uniform_sphere(rng, config.n, config.dim)
        actions = rng.integers(config.action_count, size=config.n)
        balls = {
            "kernel": KernelBall(kernel, points, config.radius, actions, config.action_count),
            "path-norm": PathNormBall(
                points, config.radius, actions, config.action_count, seed=seed
            ),
        }
        for name, ball in balls.items():
            est = estimate_rademacher(ball, config.trials, seed)
            holds = est.value <= min(est.bound, est.envelope) + 3 * est.stderr
            records.append(
                (i, name, config.n, config.radius, est.value, est.stderr, est.envelope, est.bound, bool(holds))
            )
    return pd.DataFrame.from_records(records, columns=list(RADEMACHER_COLUMNS))


def concentration_checks(config):
    """Concentration coefficients of the configured plan on every finite env."""
    records = []
    for env in config.envs:
        mdp = make_env(env)
        plan = make_plan(mdp, config.plan)
        res = concentration_coeffs(mdp, plan, policy_first_action=True)
        for h, kappa_h in enumerate(res.kappas, 1):
            records.append((env, h, float(kappa_h), res.kappa, bool(res.exact_steps[h - 1])))
    return pd.DataFrame.from_records(records, columns=list(CONCENTRATION_COLUMNS))


def run_assumption_checks(config, write=True):
    """Run the Rademacher and concentration checks of an AssumptionConfig.

    Returns a dict of tables; with ``write`` they are also saved as
    ``rademacher.csv`` and ``concentration.csv`` in the output directory.
    """
    tables = {
        "rademacher": rademacher_checks(config),
        "concentration": concentration_checks(config),
    }
    failed = int((~tables["rademacher"]["holds"]).sum())
    if failed:
        logger.warning(f"{failed} Rademacher instances exceed their envelope.")
    if write:
        directory = config.output_dir()
        for name, table in tables.items():
            path = os.path.join(directory, f"{name}.csv")
            try:
                table.to_csv(path, index=False, lineterminator="\n")
            except OSError as err:
                raise OSError(f"Could not write {path}: {err}") from err
        logger.info(f"Assumption checks written to {directory}")
    return tables


def barron_width_study(seed=0, dim=8, widths=None, norm_budget=1.0, target_width=None, eval_points=1024, chunk=4096):
    """L2 error of truncating a random-feature target to its first m neurons.

    The target has ``target_width`` neurons (16 times the largest width by
    default) and path norm ``norm_budget``. Errors are measured on
    ``eval_points`` uniform points of the sphere.

    Returns
    -------
    (DataFrame with columns width and l2_error, fitted log-log slope)
    """
    if widths is None:
        widths = [2**k for k in range(4, 13)]
    widths = sorted(int(m) for m in widths)
    if not widths or widths[0] < 1:
        raise ValueError(f"Widths must be positive, got {widths}.")
    target_width = int(target_width or 16 * widths[-1])
    if target_width < widths[-1]:
        raise ValueError(f"Target width {target_width} is below the largest width {widths[-1]}.")
    target = make_barron_target(seed, dim, target_width, norm_budget)
    x = uniform_sphere(stream_rng(seed, 1, 0, STREAM_RADEMACHER), eval_points, dim)

    # One pass over the neurons, recording prefix sums at each width
    outer, inner = target.outer, target.inner
    partial = np.zeros(eval_points)
    prefix = {}
    wanted = set(widths)
    for start in range(0, target_width, chunk):
        stop = min(start + chunk, target_width)
        terms = relu(x @ inner[start:stop].T) * outer[start:stop]
        cums = partial[:, None] + np.cumsum(terms, axis=1)
        for m in wanted:
            if start < m <= stop:
                prefix[m] = cums[:, m - start - 1] / m
        partial = cums[:, -1]
    full = partial / target_width

    errors = [float(np.sqrt(np.mean((prefix[m] - full) ** 2))) for m in widths]
    table = pd.DataFrame({"width": widths, "l2_error": errors})
    slope = None
    if len(widths) >= 2 and all(e > 0 for e in errors):
        slope, _ = fit_loglog_slope(np.column_stack([widths, errors]))
    return table, slope
