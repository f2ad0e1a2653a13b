"""Sampling plans: the per-step distributions nu_h over state-action pairs."""

import numpy as np

from ..utils import uniform_sphere


class SamplingPlan:
    """Base class for sequences of sampling distributions nu_1, ..., nu_H."""

    name = None

    def __init__(self, horizon, action_count):
        self._horizon = int(horizon)
        self._action_count = int(action_count)

    @property
    def horizon(self):
        return self._horizon

    @property
    def action_count(self):
        return self._action_count

    def sample(self, h, n, rng):
        """Draw n i.i.d. pairs from nu_h; returns (states, actions)."""
        if not 1 <= h <= self._horizon:
            raise ValueError(f"Step must be in [1, {self._horizon}], got {h}.")
        return self._sample(h, int(n), rng)

    def initial_states(self, rng, n):
        """Draw n states from the state marginal of nu_1."""
        return self.sample(1, n, rng)[0]

    def _sample(self, h, n, rng):
        raise NotImplementedError()


class TablePlan(SamplingPlan):
    """Explicit tables nu_h(s, a) on a finite MDP, shape (H, S, A)."""

    name = "table"

    def __init__(self, tables):
        tables = np.array(tables, dtype=np.float64)
        if tables.ndim != 3:
            raise ValueError(f"Plan tables must have shape (H, S, A), got {tables.shape}.")
        if np.any(tables < 0):
            raise ValueError("Plan tables must be non-negative.")
        sums = tables.sum(axis=(1, 2))
        if np.any(np.abs(sums - 1) > 1e-12):
            raise ValueError(f"Every nu_h must sum to 1, got sums {sums}.")
        super().__init__(tables.shape[0], tables.shape[2])
        tables.flags.writeable = False
        self._tables = tables
        self._cdf = np.cumsum(tables.reshape(len(tables), -1), axis=1)

    @property
    def tables(self):
        return self._tables

    @property
    def state_count(self):
        return self._tables.shape[1]

    def state_marginal(self, h):
        return self._tables[h - 1].sum(axis=1)

    def _sample(self, h, n, rng):
        S, A = self._tables.shape[1:]
        u = rng.random(n)
        flat = np.minimum(np.searchsorted(self._cdf[h - 1], u, side="right"), S * A - 1)
        states, actions = np.divmod(flat, A)
        return np.eye(S)[states], actions


class ProductPlan(SamplingPlan):
    """nu_h = (state sampler for step h) x uniform over actions.

    Parameters
    ----------
    samplers : list of callable
        One ``sampler(rng, n) -> states`` per step.
    action_count : int
        Number of actions.
    """

    name = "product"

    def __init__(self, samplers, action_count, name=None):
        super().__init__(len(samplers), action_count)
        self._samplers = list(samplers)
        if name:
            self.name = name

    def _sample(self, h, n, rng):
        states = self._samplers[h - 1](rng, n)
        actions = rng.integers(self._action_count, size=n)
        return states, actions


def uniform_plan(mdp):
    """Uniform states (finite list or sphere) times uniform actions."""
    H, A = mdp.horizon, mdp.action_count
    if mdp.is_finite:
        S = mdp.state_count
        return TablePlan(np.full((H, S, A), 1.0 / (S * A)))

    def sampler(rng, n):
        return uniform_sphere(rng, n, mdp.state_dim)

    return ProductPlan([sampler] * H, A, "uniform")


def reference_plan(mdp):
    """nu_1 = uniform x mu_A and nu_h = rho_bar x mu_A for h >= 2.

    rho_bar is the average of the mixture components, the reference
    measure the transition densities are certified against.
    """
    if not hasattr(mdp, "sample_reference"):
        raise ValueError(f"MDP {mdp!r} has no reference distribution.")

    def first(rng, n):
        return uniform_sphere(rng, n, mdp.state_dim)

    samplers = [first] + [mdp.sample_reference] * (mdp.horizon - 1)
    return ProductPlan(samplers, mdp.action_count, "reference")


def pushforward_plan(mdp):
    """nu_h = (uniform states pushed through P_{h-1} under uniform actions) x mu_A."""

    def make_sampler(h):
        def sampler(rng, n):
            states = mdp.sample_states(rng, n)
            if h == 1:
                return states
            actions = rng.integers(mdp.action_count, size=n)
            return mdp.transition(states, actions, h - 1, rng)

        return sampler

    samplers = [make_sampler(h) for h in range(1, mdp.horizon + 1)]
    if mdp.is_finite:
        # Exact tables for finite MDPs
        S, A = mdp.state_count, mdp.action_count
        tables = np.empty((mdp.horizon, S, A))
        d = np.full(S, 1.0 / S)
        tables[0] = d[:, None] / A
        for h in range(2, mdp.horizon + 1):
            p = np.full(S, 1.0 / S)
            d = np.einsum("s,sat->t", p, mdp.transitions[h - 2]) / A
            tables[h - 1] = d[:, None] / A
        tables /= tables.sum(axis=(1, 2), keepdims=True)
        return TablePlan(tables)
    return ProductPlan(samplers, mdp.action_count, "pushforward")


PLANS = {
    "uniform": uniform_plan,
    "reference": reference_plan,
    "pushforward": pushforward_plan,
}


def default_plan(mdp):
    """The reference plan for mixture MDPs, uniform otherwise."""
    if hasattr(mdp, "sample_reference"):
        return reference_plan(mdp)
    return uniform_plan(mdp)


def make_plan(mdp, name="default"):
    """Create a sampling plan by name: default, uniform, reference, pushforward."""
    if name == "default":
        return default_plan(mdp)
    if name not in PLANS:
        raise ValueError(f"Unknown plan {name!r}, use default or one of {sorted(PLANS)}.")
    return PLANS[name](mdp)
