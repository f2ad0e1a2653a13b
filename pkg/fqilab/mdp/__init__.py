"""
Episodic MDPs, policies, exact dynamic programming and sampling plans.

.. currentmodule:: fqilab.mdp

Steps are numbered h = 1, ..., H and rewards lie in [0, 1]. A simulator
answers batched queries ``(states, actions, h)``; sampled transitions are
addressed by an explicit seed and block index.

Finite MDPs embed their S states as the canonical basis points of R^S and
carry explicit reward and transition tables. Mixture MDPs live on the unit
sphere and are constructed so that their rewards and transition densities
have certified norms in a kernel or Barron space.

.. rubric:: Simulators
.. autosummary::
    :toctree: mdp/
    :template: ../_templates/custom_layout.rst

    EpisodicMdp
    FiniteMdp
    MixtureMdp
    make_finite_feature_mdp
    make_rkhs_mdp
    make_barron_mdp
    make_env
    parse_env_spec

.. rubric:: Policies and values
.. autosummary::
    :toctree: mdp/
    :template: ../_templates/custom_layout.rst

    Policy
    GreedyPolicy
    TablePolicy
    UniformPolicy
    QTable
    dp_optimal_q
    evaluate_policy_exact
    rollout_return
    truncate

.. rubric:: Sampling
.. autosummary::
    :toctree: mdp/
    :template: ../_templates/custom_layout.rst

    SamplingPlan
    TablePlan
    ProductPlan
    make_plan
    concentration_coeffs
    ConcentrationResult

"""

# flake8: noqa

from ._base import EpisodicMdp
from ._finite import FiniteMdp, make_finite_feature_mdp, state_index
from ._mixture import MixtureMdp, ReluRidge, make_rkhs_mdp, make_barron_mdp, relu_mean
from ._policy import Policy, GreedyPolicy, TablePolicy, UniformPolicy, greedy_actions
from ._dp import (
    QTable,
    truncate,
    bellman_optimality,
    dp_optimal_q,
    state_distributions,
    evaluate_policy_exact,
    rollout_return,
)
from ._plans import (
    SamplingPlan,
    TablePlan,
    ProductPlan,
    uniform_plan,
    reference_plan,
    pushforward_plan,
    default_plan,
    make_plan,
)
from ._concentration import ConcentrationResult, concentration_coeffs
from ._envspec import parse_env_spec, make_env

__all__ = [
    "EpisodicMdp",
    "FiniteMdp",
    "MixtureMdp",
    "ReluRidge",
    "make_finite_feature_mdp",
    "make_rkhs_mdp",
    "make_barron_mdp",
    "relu_mean",
    "state_index",
    "Policy",
    "GreedyPolicy",
    "TablePolicy",
    "UniformPolicy",
    "greedy_actions",
    "QTable",
    "truncate",
    "bellman_optimality",
    "dp_optimal_q",
    "state_distributions",
    "evaluate_policy_exact",
    "rollout_return",
    "SamplingPlan",
    "TablePlan",
    "ProductPlan",
    "uniform_plan",
    "reference_plan",
    "pushforward_plan",
    "default_plan",
    "make_plan",
    "ConcentrationResult",
    "concentration_coeffs",
    "parse_env_spec",
    "make_env",
]
