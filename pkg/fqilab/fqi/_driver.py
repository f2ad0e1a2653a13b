import time

import numpy as np

from ..mdp import GreedyPolicy, greedy_actions, truncate
from ..utils import as_points, logger, stream_rng, STREAM_PLAN
from ._dataset import StepDataset, build_targets


class FittedQ:
    """The truncated action-value models Q_1, ..., Q_H of one FQI run.

    The model at step h is evaluated as K_{H-h+1}(Qbar_h), so values are
    always within [0, H - h + 1]. Steps are filled from H down to 1.

    Parameters
    ----------
    horizon : int
        The horizon H.
    action_count : int
        The number of actions.
    lam : float
        The regularization constant used at every step.
    """

    def __init__(self, horizon, action_count, lam):
        self._horizon = int(horizon)
        self._action_count = int(action_count)
        self._lam = float(lam)
        self._models = [None] * self._horizon
        self._diagnostics = [None] * self._horizon
        self._simulator_calls = 0

    @property
    def horizon(self):
        return self._horizon

    @property
    def action_count(self):
        return self._action_count

    @property
    def lam(self):
        """The regularization constant lambda."""
        return self._lam

    @property
    def models(self):
        """The untruncated backend models, indexed by h - 1."""
        return list(self._models)

    @property
    def diagnostics(self):
        """Per-step dicts with the training objective and regularizer value."""
        return [dict(d) if d is not None else None for d in self._diagnostics]

    @property
    def simulator_calls(self):
        return self._simulator_calls

    def level(self, h):
        """The truncation level H - h + 1 of step h."""
        return float(self._horizon - h + 1)

    def has_step(self, h):
        return 1 <= h <= self._horizon and self._models[h - 1] is not None

    def set_step(self, h, model, diagnostics=None):
        if not 1 <= h <= self._horizon:
            raise ValueError(f"Step must be in [1, {self._horizon}], got {h}.")
        if model.action_count != self._action_count:
            raise ValueError(
                f"Model has {model.action_count} actions, expected {self._action_count}."
            )
        self._models[h - 1] = model
        self._diagnostics[h - 1] = dict(diagnostics or {})

    def add_simulator_calls(self, count):
        self._simulator_calls += int(count)

    def values(self, h, states):
        """Truncated values Q_h(x, a) for all actions, shape (n, |A|)."""
        if not self.has_step(h):
            raise ValueError(f"No fitted model for step {h}.")
        raw = self._models[h - 1].values(as_points(states))
        return truncate(raw, self.level(h))

    def greedy_action(self, h, states):
        return greedy_actions(self.values(h, states))

    def policy(self):
        """The greedy policy with respect to the fitted models."""
        return GreedyPolicy(self.values, self._horizon, self._action_count)

    def __repr__(self):
        fitted = sum(m is not None for m in self._models)
        return f"<FittedQ H={self._horizon} A={self._action_count} fitted={fitted} lam={self._lam:.4g}>"


def greedy_action(model, h, x):
    """The greedy action at state x (or the greedy actions of a batch).

    Ties go to the lowest action index. ``model`` is anything with
    ``values(h, states)``, e.g. a FittedQ or QTable.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 1:
        return int(greedy_actions(model.values(h, x[None, :]))[0])
    return greedy_actions(model.values(h, x))


def collect_step(mdp, plan, h, n, seed):
    """Draw n pairs from nu_h and query the simulator once for each."""
    rng = stream_rng(seed, 0, h, STREAM_PLAN)
    states, actions = plan.sample(h, n, rng)
    rewards, next_states = mdp.query(states, actions, h, seed, block=0)
    return StepDataset(h, states, actions, rewards, next_states, source=plan.name or "")


def run_fqi(mdp, plan, backend, n, seed=0):
    """Run fitted Q-iteration with regularization.

    For h = H, ..., 1: sample n fresh pairs from nu_h, query the simulator,
    build targets from the truncated Q_{h+1}, fit the backend with
    penalty lambda * Lambda, and truncate at level H - h + 1.

    Parameters
    ----------
    mdp : EpisodicMdp
        The simulator.
    plan : SamplingPlan
        The sampling distributions nu_1, ..., nu_H.
    backend : Backend
        A KernelBackend or NetworkBackend, carrying lambda or "auto".
    n : int
        The sample size per step.
    seed : int
        Seed of the sampling, simulator and initialization streams.

    Returns
    -------
    (FittedQ, GreedyPolicy)
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"Sample size must be at least 1, got {n}.")
    if plan.horizon != mdp.horizon or plan.action_count != mdp.action_count:
        raise ValueError(
            f"Plan (H={plan.horizon}, A={plan.action_count}) does not match "
            f"{mdp!r}."
        )
    lam = backend.resolve_lambda(mdp, n)
    logger.info(f"FQI on {mdp!r}: n={n}, lambda={lam:.6g}, backend={backend.kind}")
    fitted = FittedQ(mdp.horizon, mdp.action_count, lam)

    for h in range(mdp.horizon, 0, -1):
        t0 = time.perf_counter()
        data = collect_step(mdp, plan, h, n, seed)
        fitted.add_simulator_calls(data.n)
        targets = build_targets(data, fitted, mdp.horizon)
        try:
            model = backend.fit(
                data.states,
                data.actions,
                targets,
                lam=lam,
                level=fitted.level(h),
                action_count=mdp.action_count,
                seed=seed * mdp.horizon + h,
            )
        except Exception as err:
            raise RuntimeError(f"FQI fit failed at step {h}: {err}") from err
        info = dict(getattr(model, "info", None) or {})
        info["regularizer"] = float(model.regularizer)
        info["seconds"] = time.perf_counter() - t0
        fitted.set_step(h, model, info)
        logger.debug(
            f"step {h}: objective={info.get('objective', float('nan')):.6g}, "
            f"Lambda={info['regularizer']:.6g}"
        )

    return fitted, fitted.policy()
