"""Rate experiments: the suboptimality gap of FQI as the sample size grows."""

import concurrent.futures
import dataclasses
import time
import traceback

import numpy as np
import pandas as pd

from ..fqi import run_fqi
from ..mdp import TablePlan, concentration_coeffs, make_plan
from ..utils import logger
from ._metrics import check_propagation, loglog_fit, measure_one_step_residual, suboptimality_gap


ROW_COLUMNS = ("n", "seed", "gap", "slope_step_residual_max", "lambda", "runtime_s")
AGGREGATE_COLUMNS = ("n", "median_gap", "q25_gap", "q75_gap", "iqr_gap", "count")


@dataclasses.dataclass
class RateResult:
    """Rows, per-n aggregate and the fitted rate of one experiment.

    ``rows`` has one line per (n, seed) cell, with an empty gap for failed
    cells. ``slope``, ``intercept`` and ``half_width`` describe the
    log-log fit of the median gap; they are None when fewer than two
    positive medians exist. ``cells`` holds per-cell details (per-step
    residuals and regularizer values, the propagation check, errors).
    """

    config: object
    rows: pd.DataFrame
    aggregate: pd.DataFrame
    slope: float = None
    intercept: float = None
    half_width: float = None
    cells: list = dataclasses.field(default_factory=list)
    concentration: object = None

    @property
    def failures(self):
        return [c for c in self.cells if c.get("error")]


def empty_rows():
    return _typed_rows([])


def _typed_rows(records):
    rows = pd.DataFrame.from_records(records, columns=list(ROW_COLUMNS))
    rows = rows.astype(
        {
            "n": "int64",
            "seed": "int64",
            "gap": "float64",
            "slope_step_residual_max": "float64",
            "lambda": "float64",
            "runtime_s": "float64",
        }
    )
    return rows.sort_values(["n", "seed"], kind="stable").reset_index(drop=True)


def aggregate_rows(rows):
    """Median and interquartile range of the gap per n, failed cells left out."""
    records = []
    for n, group in rows.groupby("n", sort=True):
        gaps = group["gap"].dropna().to_numpy()
        if len(gaps):
            q25, med, q75 = np.percentile(gaps, [25, 50, 75])
        else:
            q25 = med = q75 = np.nan
        records.append((int(n), med, q25, q75, q75 - q25, len(gaps)))
    agg = pd.DataFrame.from_records(records, columns=list(AGGREGATE_COLUMNS))
    return agg.astype({"n": "int64", "count": "int64"})


def fit_rate(aggregate):
    """Log-log fit of the positive medians; None when fewer than two exist."""
    ok = aggregate[(aggregate["median_gap"] > 0) & aggregate["median_gap"].notna()]
    if len(ok) < 2:
        return None
    return loglog_fit(ok[["n", "median_gap"]].to_numpy(dtype=np.float64))


class _FqiCellRunner:
    """Runs one (n, seed) cell on a shared environment."""

    def __init__(self, config):
        self.config = config
        self.mdp = config.make_env()
        self.plan = make_plan(self.mdp, config.plan)
        self.finite = isinstance(self.plan, TablePlan)
        self.concentration = None
        self.reference = None
        self.init = None
        if self.finite:
            self.init = self.plan.state_marginal(1)
            self.concentration = concentration_coeffs(
                self.mdp, self.plan, policy_first_action=True
            )
        else:
            ref_n = config.reference_n or 4 * max(config.sizes)
            backend = config.backend.build(
                config.lam, self.mdp.state_dim, config.lam_scale
            )
            logger.info(f"Fitting the reference policy with n={ref_n}")
            _, self.reference = run_fqi(self.mdp, self.plan, backend, ref_n, config.master_seed)

    def __call__(self, n, seed, cell_seed):
        config = self.config
        backend = config.backend.build(config.lam, self.mdp.state_dim, config.lam_scale)
        fitted, policy = run_fqi(self.mdp, self.plan, backend, n, cell_seed)
        detail = {
            "regularizers": [d["regularizer"] for d in fitted.diagnostics],
            "simulator_calls": fitted.simulator_calls,
        }
        if self.finite:
            gap = suboptimality_gap(self.mdp, policy, init=self.init)
            residuals = measure_one_step_residual(self.mdp, fitted, self.plan)
            check = check_propagation(gap, residuals, self.concentration)
            detail.update(residuals=residuals.tolist(), propagation=check)
            residual_max = float(residuals.max())
        else:
            gap, stderr = suboptimality_gap(
                self.mdp,
                policy,
                reference=self.reference,
                episodes=self.config.episodes,
                seed=cell_seed,
            )
            detail["gap_stderr"] = stderr
            residual_max = np.nan
        return {
            "gap": gap,
            "slope_step_residual_max": residual_max,
            "lambda": fitted.lam,
            "detail": detail,
        }


def _run_cell(runner, config, index, n, seed):
    cell_seed = config.cell_seed(index)
    t0 = time.perf_counter()
    detail = {"n": n, "seed": seed, "cell_seed": cell_seed}
    try:
        out = runner(n, seed, cell_seed)
    except Exception as err:
        logger.warning(f"Cell n={n}, seed={seed} failed:\n{traceback.format_exc()}")
        detail["error"] = f"{type(err).__name__}: {err}"
        out = {"gap": np.nan, "slope_step_residual_max": np.nan, "lambda": np.nan}
    runtime = time.perf_counter() - t0 if config.timing else 0.0
    detail.update(out.get("detail") or {})
    row = {
        "n": n,
        "seed": seed,
        "gap": out["gap"],
        "slope_step_residual_max": out.get("slope_step_residual_max", np.nan),
        "lambda": out.get("lambda", np.nan),
        "runtime_s": runtime,
    }
    return row, detail


def run_rate_experiment(config, runner=None):
    """Run FQI on every (n, seed) cell and fit the rate of the median gap.

    Parameters
    ----------
    config : ExperimentConfig
        The experiment.
    runner : callable or None
        ``runner(n, seed, cell_seed)`` returning a dict with at least
        ``gap``. The default runs FQI and measures the gap exactly on
        finite envs and by rollouts otherwise.

    Returns
    -------
    RateResult
    """
    concentration = None
    if runner is None:
        runner = _FqiCellRunner(config)
        concentration = runner.concentration
    cells = config.cells()
    logger.info(f"Rate experiment on {config.env}: {len(cells)} cells")
    if config.workers > 1:
        with concurrent.futures.ThreadPoolExecutor(config.workers) as pool:
            futures = [pool.submit(_run_cell, runner, config, *cell) for cell in cells]
            results = [f.result() for f in futures]
    else:
        results = [_run_cell(runner, config, *cell) for cell in cells]

    results.sort(key=lambda r: (r[0]["n"], r[0]["seed"]))
    rows = _typed_rows([r[0] for r in results])
    aggregate = aggregate_rows(rows)
    fit = fit_rate(aggregate)
    result = RateResult(
        config,
        rows,
        aggregate,
        cells=[r[1] for r in results],
        concentration=concentration,
    )
    if fit is not None:
        result.slope = fit["slope"]
        result.intercept = fit["intercept"]
        result.half_width = fit["half_width"]
    return result
