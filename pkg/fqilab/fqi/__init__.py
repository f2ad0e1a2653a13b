"""
Fitted Q-iteration with regularization.

.. currentmodule:: fqilab.fqi

The driver runs backward over steps h = H, ..., 1. At each step it draws
n fresh pairs from the sampling plan, queries the simulator once per pair,
regresses the targets r + max_a' Q_{h+1}(x', a') with a penalized backend
and truncates the result at level H - h + 1. The output is the greedy
policy with respect to the fitted models.

.. autosummary::
    :toctree: fqi/
    :template: ../_templates/custom_layout.rst

    run_fqi
    FittedQ
    StepDataset
    build_targets
    greedy_action
    truncate
    KernelBackend
    NetworkBackend
    auto_lambda
    make_backend

"""

# flake8: noqa

from ..mdp import truncate
from ._dataset import StepDataset, build_targets
from ._backends import (
    DEFAULT_LAM_SCALE,
    Backend,
    KernelBackend,
    NetworkBackend,
    auto_lambda,
    lambda_threshold,
    make_backend,
)
from ._driver import FittedQ, greedy_action, collect_step, run_fqi

__all__ = [
    "truncate",
    "StepDataset",
    "build_targets",
    "DEFAULT_LAM_SCALE",
    "Backend",
    "KernelBackend",
    "NetworkBackend",
    "auto_lambda",
    "lambda_threshold",
    "make_backend",
    "FittedQ",
    "greedy_action",
    "collect_step",
    "run_fqi",
]
