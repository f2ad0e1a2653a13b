"""Exact dynamic programming on finite MDPs, and Monte Carlo rollouts."""

import numpy as np

from ..utils import (
    as_points,
    stream_rng,
    STREAM_ACTION,
    STREAM_INITIAL,
    STREAM_ROLLOUT,
)
from ._finite import state_index
from ._policy import GreedyPolicy


def truncate(value, level):
    """The truncation K_m(v) = min(max(v, 0), m); works on arrays."""
    if level < 0:
        raise ValueError(f"Truncation level must be non-negative, got {level}.")
    if np.isscalar(value):
        return min(max(float(value), 0.0), float(level))
    return np.clip(value, 0.0, level)


def _require_tables(mdp):
    if getattr(mdp, "transitions", None) is None or not mdp.is_finite:
        raise ValueError(f"Need a finite MDP with explicit tables, got {mdp!r}.")


class QTable:
    """Step-indexed action-value tables Q_h[s, a] on a finite MDP.

    Parameters
    ----------
    tables : ndarray
        Shape (H, S, A); ``tables[h - 1]`` holds Q_h.
    """

    def __init__(self, tables):
        tables = np.array(tables, dtype=np.float64)
        if tables.ndim != 3:
            raise ValueError(f"Q tables must have shape (H, S, A), got {tables.shape}.")
        tables.flags.writeable = False
        self._tables = tables

    @property
    def tables(self):
        return self._tables

    @property
    def horizon(self):
        return self._tables.shape[0]

    @property
    def state_count(self):
        return self._tables.shape[1]

    @property
    def action_count(self):
        return self._tables.shape[2]

    def q(self, h):
        """The (S, A) table at step h; zero at h = H + 1."""
        if h == self.horizon + 1:
            return np.zeros(self._tables.shape[1:])
        return self._tables[h - 1]

    def v(self, h):
        """V_h(s) = max_a Q_h(s, a); zero at h = H + 1."""
        return self.q(h).max(axis=1)

    def values(self, h, states):
        """Rows of Q_h for one-hot states, shape (n, A)."""
        return self.q(h)[state_index(states, self.state_count)]

    def greedy_policy(self):
        return GreedyPolicy(self.values, self.horizon, self.action_count)


def bellman_optimality(mdp, h, next_v):
    """T_h^* applied to a step-(h+1) value vector: r_h + P_h max_a Q_{h+1}."""
    r = mdp.rewards[h - 1]
    p = mdp.transitions[h - 1]
    return r + p @ truncate(next_v, mdp.horizon - h)


def dp_optimal_q(mdp):
    """Optimal action values by backward induction, with Q_{H+1} = 0."""
    _require_tables(mdp)
    H, S, A = mdp.rewards.shape
    tables = np.zeros((H, S, A))
    next_v = np.zeros(S)
    for h in range(H, 0, -1):
        tables[h - 1] = bellman_optimality(mdp, h, next_v)
        next_v = tables[h - 1].max(axis=1)
    return QTable(tables)


def _init_distribution(mdp, init):
    S = mdp.state_count
    if init is None:
        return np.full(S, 1.0 / S)
    init = np.asarray(init, dtype=np.float64).ravel()
    if len(init) != S:
        raise ValueError(f"Initial distribution has {len(init)} entries, MDP has {S} states.")
    if np.any(init < 0) or abs(init.sum() - 1) > 1e-12:
        raise ValueError("Initial distribution must be non-negative and sum to 1.")
    return init


def state_distributions(mdp, policy, init=None):
    """Exact state distributions d_1, ..., d_H under a policy, shape (H, S)."""
    _require_tables(mdp)
    d = _init_distribution(mdp, init)
    points = mdp.points
    out = np.empty((mdp.horizon, mdp.state_count))
    for h in range(1, mdp.horizon + 1):
        out[h - 1] = d
        probs = policy.probabilities(h, points)
        d = np.einsum("sa,sat->t", d[:, None] * probs, mdp.transitions[h - 1])
    return out


def evaluate_policy_exact(mdp, policy, init=None):
    """The expected total reward J_mu(pi), by forward recursion on distributions.

    ``init`` is the initial state distribution (uniform by default).
    """
    _require_tables(mdp)
    if policy.action_count != mdp.action_count:
        raise ValueError("Policy and MDP disagree on the number of actions.")
    dists = state_distributions(mdp, policy, init)
    points = mdp.points
    total = 0.0
    for h in range(1, mdp.horizon + 1):
        q = dists[h - 1][:, None] * policy.probabilities(h, points)
        total += float(np.sum(q * mdp.rewards[h - 1]))
    return total


def _sample_categorical(rng, probs):
    u = rng.random(len(probs))
    cdf = np.cumsum(probs, axis=1)
    return np.minimum((cdf <= u[:, None]).sum(axis=1), probs.shape[1] - 1)


def rollout_return(mdp, policy, episodes, seed, init=None, chunk=8192):
    """Monte Carlo estimate of J(pi): (mean, standard error) of episode returns.

    Parameters
    ----------
    mdp : EpisodicMdp
        Any simulator.
    policy : Policy
        The policy to evaluate.
    episodes : int
        Number of episodes, at least 1.
    seed : int
        Seed of the rollout streams.
    init : None, ndarray or callable
        Initial states: a distribution over states for finite MDPs, or a
        callable ``init(rng, n)`` returning state points. By default,
        uniform over the finite states or over the sphere.
    """
    episodes = int(episodes)
    if episodes < 1:
        raise ValueError(f"Need at least one episode, got {episodes}.")
    returns = np.empty(episodes)
    for block, start in enumerate(range(0, episodes, chunk)):
        n = min(chunk, episodes - start)
        rng = stream_rng(seed, block, 0, STREAM_INITIAL)
        if callable(init):
            states = as_points(init(rng, n), mdp.state_dim)
        elif mdp.is_finite:
            probs = _init_distribution(mdp, init)
            states = mdp.points[_sample_categorical(rng, np.tile(probs, (n, 1)))]
        else:
            states = mdp.sample_states(rng, n)
        total = np.zeros(n)
        for h in range(1, mdp.horizon + 1):
            arng = stream_rng(seed, block, h, STREAM_ACTION)
            actions = _sample_categorical(arng, policy.probabilities(h, states))
            total += mdp.reward(states, actions, h)
            if h < mdp.horizon:
                trng = stream_rng(seed, block, h, STREAM_ROLLOUT)
                states = mdp.transition(states, actions, h, trng)
        returns[start : start + n] = total
    mean = float(returns.mean())
    stderr = float(returns.std(ddof=1) / np.sqrt(episodes)) if episodes > 1 else 0.0
    return mean, stderr
