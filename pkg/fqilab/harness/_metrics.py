"""Quantities measured by the experiments: gaps, residuals, bounds and fits."""

import numpy as np
from scipy import stats

from ..mdp import (
    ConcentrationResult,
    TablePlan,
    dp_optimal_q,
    evaluate_policy_exact,
    rollout_return,
)


def suboptimality_gap(mdp, policy, *, init=None, reference=None, episodes=20000, seed=0):
    """The suboptimality J(pi*) - J(pi) of a policy.

    On finite MDPs both values are exact: J(pi*) = E_mu V_1^* from dynamic
    programming and J(pi) by forward recursion, with mu the initial state
    distribution (``init``, uniform by default). Returns a float.

    On other MDPs the optimum is unknown, so a ``reference`` policy stands
    in for it. Both policies are rolled out with the same seed and the
    result is ``(gap, stderr)``.
    """
    if mdp.is_finite and getattr(mdp, "transitions", None) is not None:
        q_star = dp_optimal_q(mdp)
        optimal = evaluate_policy_exact(mdp, q_star.greedy_policy(), init)
        return optimal - evaluate_policy_exact(mdp, policy, init)
    if reference is None:
        raise ValueError(
            f"{mdp!r} has no exact optimum; pass a reference policy to estimate the gap."
        )
    ref, ref_err = rollout_return(mdp, reference, episodes, seed, init)
    value, err = rollout_return(mdp, policy, episodes, seed, init)
    return ref - value, float(np.hypot(ref_err, err))


def measure_one_step_residual(mdp, fitted, plan):
    """Exact one-step errors |T_h^* Q_{h+1} - Q_h|_{2, nu_h}, for h = 1..H.

    ``fitted`` is anything with ``values(h, states)`` returning the
    (truncated) action values, e.g. a FittedQ or QTable. Q_{H+1} = 0.
    """
    if not isinstance(plan, TablePlan):
        raise TypeError("Exact residuals need a TablePlan on a finite MDP.")
    if getattr(mdp, "transitions", None) is None:
        raise ValueError(f"Exact residuals need a finite MDP with tables, got {mdp!r}.")
    H = mdp.horizon
    points = mdp.points
    residuals = np.empty(H)
    next_v = np.zeros(mdp.state_count)
    for h in range(H, 0, -1):
        q = np.asarray(fitted.values(h, points), dtype=np.float64)
        target = mdp.rewards[h - 1] + mdp.transitions[h - 1] @ next_v
        residuals[h - 1] = np.sqrt(np.sum(plan.tables[h - 1] * (target - q) ** 2))
        next_v = q.max(axis=1)
    return residuals


def check_propagation(gap, residuals, kappas):
    """Evaluate both sides of the error propagation inequality.

    The gap is at most 2 sum_h h kappa_h eps_h, which is at most
    2 kappa H^2 max_h eps_h with kappa = H^-2 sum_h h kappa_h.

    Parameters
    ----------
    gap : float
        The measured suboptimality.
    residuals : array
        The one-step errors eps_1..eps_H in L2(nu_h).
    kappas : array or ConcentrationResult
        The concentration coefficients kappa_1..kappa_H.

    Returns
    -------
    dict with ``gap``, ``weighted`` (the sum form), ``bound`` (the max
    form) and ``holds``.
    """
    if isinstance(kappas, ConcentrationResult):
        kappas = kappas.kappas
    kappas = np.asarray(kappas, dtype=np.float64)
    residuals = np.asarray(residuals, dtype=np.float64)
    if kappas.shape != residuals.shape or kappas.ndim != 1:
        raise ValueError(
            f"Need one residual per coefficient, got {residuals.shape} and {kappas.shape}."
        )
    H = len(kappas)
    steps = np.arange(1, H + 1)
    kappa = float(np.sum(steps * kappas) / H**2)
    weighted = 2.0 * float(np.sum(steps * kappas * residuals))
    bound = 2.0 * kappa * H**2 * float(residuals.max())
    return {
        "gap": float(gap),
        "kappa": kappa,
        "weighted": weighted,
        "bound": bound,
        "holds": bool(gap <= bound * (1 + 1e-9) + 1e-12),
    }


def _loglog_points(points):
    points = np.asarray(points, dtype=np.float64)
    if points.ndim != 2 or points.shape[1] != 2:
        raise ValueError(f"Expected (n, value) pairs, got shape {points.shape}.")
    if len(points) < 2:
        raise ValueError("A log-log fit needs at least two points.")
    if np.any(points <= 0):
        raise ValueError("A log-log fit needs positive sizes and values.")
    return np.log(points[:, 0]), np.log(points[:, 1])


def fit_loglog_slope(points):
    """Ordinary least squares of log value on log n; returns (slope, intercept)."""
    x, y = _loglog_points(points)
    fit = stats.linregress(x, y)
    return float(fit.slope), float(fit.intercept)


def loglog_fit(points, confidence=0.95):
    """Like ``fit_loglog_slope``, with the confidence half-width of the slope.

    The half-width is NaN when there are only two points.
    """
    x, y = _loglog_points(points)
    fit = stats.linregress(x, y)
    dof = len(x) - 2
    if dof > 0:
        half_width = float(stats.t.ppf(0.5 + confidence / 2, dof) * fit.stderr)
    else:
        half_width = float("nan")
    return {"slope": float(fit.slope), "intercept": float(fit.intercept), "half_width": half_width}


def theorem_bound(kappa, H, n, lam, M, R, eps_f=0.0, delta=0.05):
    """The closed-form high-probability bound on the suboptimality gap.

    2 kappa H^2 { eps_f^2 + 2 [lam + 2 M H / sqrt(n)] (R + 1)
    + 4 H^2 [2 sqrt(ln(4H/delta)/n) + 2/sqrt(n) + sqrt(ln(8nH(H+R)/delta)/n)] }^(1/2)
    """
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}.")
    if n < 1 or H < 1:
        raise ValueError(f"Need n >= 1 and H >= 1, got n={n}, H={H}.")
    root_n = np.sqrt(n)
    stat = (
        2.0 * np.sqrt(np.log(4.0 * H / delta) / n)
        + 2.0 / root_n
        + np.sqrt(np.log(8.0 * n * H * (H + R) / delta) / n)
    )
    inner = eps_f**2 + 2.0 * (lam + 2.0 * M * H / root_n) * (R + 1.0) + 4.0 * H**2 * stat
    return float(2.0 * kappa * H**2 * np.sqrt(inner))
