"""Concentration coefficients of a sampling plan on a finite MDP.

For a policy pi, let q_h^pi be the step-h state-action distribution reached
from nu_1. The coefficient kappa_h is the sup over policies of
|q_h^pi / nu_h|_{2, nu_h}, i.e. sqrt(sum q^2 / nu). The squared norm is convex
in q_h^pi, and the set of reachable q_h^pi is the convex hull of those of
deterministic policies, so the sup is attained by a deterministic policy.
The step-h action itself is chosen per state, giving the factor
c_s = max_a 1 / nu_h(s, a).
"""

import dataclasses
import itertools

import numpy as np

from ..utils import logger
from ._plans import TablePlan


@dataclasses.dataclass
class ConcentrationResult:
    """Coefficients kappa_1..kappa_H, their weighted mean and exactness.

    ``kappa`` is H^-2 sum_h h kappa_h. ``exact`` is False when some
    kappa_h is an upper bound rather than the exact sup.
    """

    kappas: np.ndarray
    kappa: float
    exact: bool
    exact_steps: np.ndarray = None


def _state_factor(nu):
    # c_s = max_a 1 / nu(s, a), infinite where some action has no mass
    with np.errstate(divide="ignore"):
        inv = np.where(nu > 0, 1.0 / np.where(nu > 0, nu, 1.0), np.inf)
    return inv.max(axis=1)


def _weighted_square(d, c):
    mask = d > 0
    if np.any(np.isinf(c[mask])):
        return np.inf
    return float(np.sum(d[mask] ** 2 * c[mask]))


def _push(d, actions, transitions):
    # d' = sum_s d(s) P(. | s, pi(s))
    return d @ transitions[np.arange(len(d)), actions]


def concentration_coeffs(mdp, plan, *, policy_first_action=False, max_policies=2**16):
    """Compute the concentration coefficients of ``plan`` on ``mdp``.

    Parameters
    ----------
    mdp : FiniteMdp
        The MDP, with explicit tables.
    plan : TablePlan
        The sampling distributions nu_h.
    policy_first_action : bool
        If False (default), (S_1, A_1) ~ nu_1 and kappa_1 = 1. If True, S_1
        follows the state marginal of nu_1 and the policy picks A_1 too;
        kappa_1 is then computed.
    max_policies : int
        Largest number of deterministic policies to enumerate for one
        step. Beyond it, the step gets the upper bound
        max over reachable (s, a) of sum_t P(t | s, a)^2 c_t, and the
        result is flagged inexact.

    Returns
    -------
    ConcentrationResult
    """
    if not isinstance(plan, TablePlan):
        raise TypeError("Concentration coefficients need a TablePlan on a finite MDP.")
    if getattr(mdp, "transitions", None) is None:
        raise ValueError("Concentration coefficients need explicit transition tables.")
    H, S, A = mdp.horizon, mdp.state_count, mdp.action_count
    if plan.tables.shape != (H, S, A):
        raise ValueError(f"Plan shape {plan.tables.shape} does not match MDP {(H, S, A)}.")
    P = mdp.transitions
    nu = plan.tables

    kappas = np.ones(H)
    exact = np.ones(H, dtype=bool)
    d1 = nu[0].sum(axis=1)
    if policy_first_action:
        kappas[0] = np.sqrt(_weighted_square(d1, _state_factor(nu[0])))

    # The distribution at the first step with a free policy choice
    if policy_first_action:
        start, free_from = d1, 1
    else:
        start, free_from = np.einsum("sa,sat->t", nu[0], P[0]), 2

    # States reachable at each step under some policy
    reach = [d1 > 0]
    for h in range(2, H + 1):
        if h == 2 and not policy_first_action:
            reach.append(start > 0)
        else:
            reach.append(np.any(P[h - 2][reach[-1]] > 0, axis=(0, 1)))

    per_step = A**S
    for h in range(2, H + 1):
        c = _state_factor(nu[h - 1])
        free_steps = list(range(free_from, h))
        count = per_step ** len(free_steps)
        if count <= max_policies:
            best = 0.0
            for choice in itertools.product(range(per_step), repeat=len(free_steps)):
                d = start
                for k, step in zip(choice, free_steps):
                    actions = np.array(np.unravel_index(k, (A,) * S))
                    d = _push(d, actions, P[step - 1])
                best = max(best, _weighted_square(d, c))
            kappas[h - 1] = np.sqrt(best)
        else:
            # Convexity: the sup over distributions of q_{h-1} is at a point mass
            rows = P[h - 2][reach[h - 2]].reshape(-1, S)
            kappas[h - 1] = np.sqrt(max(_weighted_square(row, c) for row in rows))
            exact[h - 1] = False
            logger.warning(
                f"kappa_{h}: {count} deterministic policies exceed the budget "
                f"{max_policies}, reporting an upper bound."
            )

    weights = np.arange(1, H + 1)
    kappa = float(np.sum(weights * kappas) / H**2)
    return ConcentrationResult(kappas, kappa, bool(exact.all()), exact)
