import numpy as np

from ..kernels import DeltaKernel
from ..utils import as_points, dump_yaml, load_yaml, stream_rng, STREAM_ENV
from ._base import EpisodicMdp


FORMAT_VERSION = 1


def state_index(points, state_count):
    """Map one-hot state points to their integer index."""
    points = as_points(points, state_count)
    index = np.argmax(points, axis=1)
    ok = (points[np.arange(len(points)), index] == 1.0) & (
        np.count_nonzero(points, axis=1) == 1
    )
    if not np.all(ok):
        raise ValueError("States of a finite MDP must be one-hot points.")
    return index


class FiniteMdp(EpisodicMdp):
    """An MDP on S states embedded as the canonical basis points of R^S.

    Parameters
    ----------
    rewards : ndarray
        Reward tables r_h(s, a), shape (H, S, A), values in [0, 1].
    transitions : ndarray
        Transition tables P_h(s' | s, a), shape (H, S, A, S).
    metadata : dict
        Extra information to carry along.
    """

    def __init__(self, rewards, transitions, metadata=None):
        rewards = np.array(rewards, dtype=np.float64)
        transitions = np.array(transitions, dtype=np.float64)
        if rewards.ndim != 3:
            raise ValueError(f"Rewards must have shape (H, S, A), got {rewards.shape}.")
        H, S, A = rewards.shape
        if transitions.shape != (H, S, A, S):
            raise ValueError(
                f"Transitions must have shape {(H, S, A, S)}, got {transitions.shape}."
            )
        if np.any(rewards < 0) or np.any(rewards > 1):
            raise ValueError("Rewards must lie in [0, 1].")
        if np.any(transitions < 0):
            raise ValueError("Transition probabilities must be non-negative.")
        if np.any(np.abs(transitions.sum(axis=3) - 1.0) > 1e-12):
            raise ValueError("Every transition row must sum to 1 (within 1e-12).")
        metadata = dict(metadata or {})
        metadata.setdefault("K_x", 1.0)
        super().__init__(S, H, A, "finite", metadata)
        rewards.flags.writeable = False
        transitions.flags.writeable = False
        self._rewards = rewards
        self._transitions = transitions
        self._cdf = np.cumsum(transitions, axis=3)
        self._kernel = DeltaKernel()

    @property
    def state_count(self):
        return self._rewards.shape[1]

    @property
    def rewards(self):
        """The (H, S, A) reward tables (read-only)."""
        return self._rewards

    @property
    def transitions(self):
        """The (H, S, A, S) transition tables (read-only)."""
        return self._transitions

    @property
    def points(self):
        """The embedded states, one row per state."""
        return np.eye(self.state_count)

    @property
    def kernel(self):
        """The delta kernel, under which the setting holds exactly."""
        return self._kernel

    def state_index(self, points):
        return state_index(points, self.state_count)

    def sample_states(self, rng, n):
        return self.points[rng.integers(self.state_count, size=n)]

    def _reward(self, states, actions, h):
        return self._rewards[h - 1, self.state_index(states), actions]

    def _transition(self, states, actions, h, rng):
        cdf = self._cdf[h - 1, self.state_index(states), actions]
        u = rng.random(len(actions))
        nxt = np.minimum((cdf <= u[:, None]).sum(axis=1), self.state_count - 1)
        return self.points[nxt]

    def relabel(self, state_perm=None, action_perm=None):
        """A copy with states and/or actions renumbered.

        State ``s`` of this MDP becomes state ``state_perm[s]`` of the copy.
        """
        S, A = self.state_count, self.action_count
        sp = np.arange(S) if state_perm is None else np.asarray(state_perm)
        ap = np.arange(A) if action_perm is None else np.asarray(action_perm)
        rewards = np.empty_like(self._rewards)
        transitions = np.empty_like(self._transitions)
        rewards[:, sp[:, None], ap[None, :]] = self._rewards
        transitions[:, sp[:, None], ap[None, :], :] = self._transitions[:, :, :, np.argsort(sp)]
        return FiniteMdp(rewards, transitions, self.metadata)

    def to_dict(self):
        return {
            "format": "fqilab-finite-mdp",
            "version": FORMAT_VERSION,
            "horizon": self.horizon,
            "states": self.state_count,
            "actions": self.action_count,
            "metadata": self.metadata,
            "rewards": self._rewards.tolist(),
            "transitions": self._transitions.tolist(),
        }

    @classmethod
    def from_dict(cls, d):
        if d.get("format") != "fqilab-finite-mdp":
            raise ValueError("Not a finite MDP record.")
        return cls(d["rewards"], d["transitions"], d.get("metadata"))

    def save(self, path):
        """Write the MDP to a YAML file."""
        dump_yaml(self.to_dict(), path)

    @classmethod
    def load(cls, path):
        return cls.from_dict(load_yaml(path))


def make_finite_feature_mdp(seed, states, actions, horizon, smoothing=0.1):
    """A random tabular MDP with strictly positive transition rows.

    States are the canonical basis points, so the delta kernel makes every
    value function an RKHS element with zero approximation error. Rows are
    mixed with the uniform distribution at weight ``smoothing``.
    """
    if states < 2:
        raise ValueError(f"Need at least 2 states, got {states}.")
    if not 0 < smoothing <= 1:
        raise ValueError(f"Smoothing must be in (0, 1], got {smoothing}.")
    rng = stream_rng(seed, 0, 0, STREAM_ENV)
    H, S, A = horizon, states, actions
    rewards = rng.random((H, S, A))
    raw = rng.dirichlet(np.full(S, 0.5), size=(H, S, A))
    transitions = (1 - smoothing) * raw + smoothing / S
    transitions /= transitions.sum(axis=3, keepdims=True)
    metadata = {
        "generator": "finite",
        "seed": int(seed),
        "smoothing": float(smoothing),
        "K_x": 1.0,
        # P_h(.|s,a) <= C * uniform with C = S * max P
        "C_uniform": float(S * transitions.max()),
    }
    return FiniteMdp(rewards, transitions, metadata)
