"""
Experiment orchestration: rate studies, assumption checks and the CLI.

.. currentmodule:: fqilab.harness

A rate experiment runs FQI on a grid of sample sizes and seeds, measures
the suboptimality gap of each greedy policy and fits the rate of the
median gap in log-log scale. Results are written as CSV tables with a YAML
metadata record.

.. rubric:: Configuration
.. autosummary::
    :toctree: harness/
    :template: ../_templates/custom_layout.rst

    ExperimentConfig
    RunConfig
    BackendConfig
    AssumptionConfig
    load_config

.. rubric:: Measurements
.. autosummary::
    :toctree: harness/
    :template: ../_templates/custom_layout.rst

    suboptimality_gap
    measure_one_step_residual
    check_propagation
    theorem_bound
    fit_loglog_slope
    loglog_fit
    estimate_rademacher
    KernelBall
    PathNormBall
    RademacherEstimate

.. rubric:: Experiments
.. autosummary::
    :toctree: harness/
    :template: ../_templates/custom_layout.rst

    run_rate_experiment
    RateResult
    write_results
    read_results
    run_assumption_checks
    barron_width_study

"""

# flake8: noqa

from ._config import (
    ExperimentConfig,
    RunConfig,
    BackendConfig,
    AssumptionConfig,
    load_config,
    resolve_output,
)
from ._metrics import (
    suboptimality_gap,
    measure_one_step_residual,
    check_propagation,
    theorem_bound,
    fit_loglog_slope,
    loglog_fit,
)
from ._rademacher import RademacherEstimate, KernelBall, PathNormBall, estimate_rademacher
from ._rates import RateResult, run_rate_experiment, aggregate_rows, ROW_COLUMNS
from ._io import write_results, read_results
from ._studies import run_assumption_checks, barron_width_study
from ._cli import main

__all__ = [
    "ExperimentConfig",
    "RunConfig",
    "BackendConfig",
    "AssumptionConfig",
    "load_config",
    "resolve_output",
    "suboptimality_gap",
    "measure_one_step_residual",
    "check_propagation",
    "theorem_bound",
    "fit_loglog_slope",
    "loglog_fit",
    "RademacherEstimate",
    "KernelBall",
    "PathNormBall",
    "estimate_rademacher",
    "RateResult",
    "run_rate_experiment",
    "aggregate_rows",
    "ROW_COLUMNS",
    "write_results",
    "read_results",
    "run_assumption_checks",
    "barron_width_study",
]
