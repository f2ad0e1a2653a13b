import numpy as np

from ..utils import as_points, stream_rng, STREAM_TRANSITION


SUPPORTS = ("finite", "sphere")


class EpisodicMdp:
    """Base class for episodic MDP simulators.

    Steps are numbered h = 1, ..., H. Rewards lie in [0, 1]. A simulator
    answers batched queries (states, actions, h) with rewards and sampled
    next states. Sampling is addressed by an explicit seed and block index,
    so queries are pure and may run concurrently.

    Parameters
    ----------
    state_dim : int
        Dimension d of the state points.
    horizon : int
        The horizon H.
    action_count : int
        The number of actions |A|.
    support : str
        Either "finite" (a list of points) or "sphere" (the unit sphere).
    metadata : dict
        Certified constants and construction parameters.
    """

    def __init__(self, state_dim, horizon, action_count, support, metadata=None):
        if support not in SUPPORTS:
            raise ValueError(f"Support must be one of {SUPPORTS}, got {support!r}.")
        for name, value in [
            ("state_dim", state_dim),
            ("horizon", horizon),
            ("action_count", action_count),
        ]:
            if int(value) != value or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value}.")
        self._state_dim = int(state_dim)
        self._horizon = int(horizon)
        self._action_count = int(action_count)
        self._support = support
        self._metadata = dict(metadata or {})

    @property
    def state_dim(self):
        return self._state_dim

    @property
    def horizon(self):
        return self._horizon

    @property
    def action_count(self):
        return self._action_count

    @property
    def support(self):
        return self._support

    @property
    def is_finite(self):
        return self._support == "finite"

    @property
    def metadata(self):
        """A copy of the metadata dict (certified constants etc.)."""
        return dict(self._metadata)

    def check_step(self, h):
        if not 1 <= h <= self._horizon:
            raise ValueError(f"Step must be in [1, {self._horizon}], got {h}.")

    def _check_query(self, states, actions, h):
        self.check_step(h)
        states = as_points(states, self._state_dim)
        actions = np.asarray(actions, dtype=np.int64).ravel()
        if len(actions) != len(states):
            raise ValueError(f"{len(states)} states but {len(actions)} actions.")
        if np.any((actions < 0) | (actions >= self._action_count)):
            raise ValueError(f"Action index out of range for {self._action_count} actions.")
        return states, actions

    def reward(self, states, actions, h):
        """Rewards r_h(x_i, a_i), in [0, 1]."""
        states, actions = self._check_query(states, actions, h)
        return self._reward(states, actions, h)

    def transition(self, states, actions, h, rng):
        """Sample next states from P_h(. | x_i, a_i) using the given Generator."""
        states, actions = self._check_query(states, actions, h)
        return self._transition(states, actions, h, rng)

    def sample_next(self, states, actions, h, seed, block=0):
        """Sample next states from the counter-addressed stream (seed, block, h)."""
        rng = stream_rng(seed, block, h, STREAM_TRANSITION)
        return self.transition(states, actions, h, rng)

    def query(self, states, actions, h, seed, block=0):
        """Query the simulator: returns (rewards, next_states)."""
        return self.reward(states, actions, h), self.sample_next(states, actions, h, seed, block)

    def sample_states(self, rng, n):
        """Draw n states from the default base measure of the support."""
        raise NotImplementedError()

    def _reward(self, states, actions, h):
        raise NotImplementedError()

    def _transition(self, states, actions, h, rng):
        raise NotImplementedError()

    def __repr__(self):
        return (
            f"<{self.__class__.__name__} d={self._state_dim} H={self._horizon} "
            f"A={self._action_count} support={self._support}>"
        )
