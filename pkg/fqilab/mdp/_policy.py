import numpy as np

from ..utils import as_points
from ._finite import state_index


class Policy:
    """Base class for nonstationary policies.

    ``probabilities(h, states)`` returns an (n, |A|) array whose rows are
    distributions over actions. ``kind`` tells whether the policy is an
    explicit table or greedy with respect to some action values.
    """

    kind = None

    def __init__(self, horizon, action_count):
        self._horizon = int(horizon)
        self._action_count = int(action_count)

    @property
    def horizon(self):
        return self._horizon

    @property
    def action_count(self):
        return self._action_count

    def probabilities(self, h, states):
        if not 1 <= h <= self._horizon:
            raise ValueError(f"Step must be in [1, {self._horizon}], got {h}.")
        return self._probabilities(h, as_points(states))

    def _probabilities(self, h, states):
        raise NotImplementedError()


def greedy_actions(values):
    """Row-wise argmax; ties go to the lowest action index."""
    return np.argmax(values, axis=1)


class GreedyPolicy(Policy):
    """Deterministic policy that is greedy with respect to action values.

    Parameters
    ----------
    values : callable
        ``values(h, states)`` returning an (n, |A|) array, e.g. the
        ``values`` method of a FittedQ or QTable.
    """

    kind = "greedy"

    def __init__(self, values, horizon, action_count):
        super().__init__(horizon, action_count)
        self._values = values

    def actions(self, h, states):
        return greedy_actions(self._values(h, as_points(states)))

    def _probabilities(self, h, states):
        probs = np.zeros((len(states), self.action_count))
        probs[np.arange(len(states)), self.actions(h, states)] = 1.0
        return probs


class TablePolicy(Policy):
    """An explicit policy on a finite MDP.

    Parameters
    ----------
    table : ndarray
        Action probabilities, shape (H, S, A). See ``deterministic()`` for
        a policy given by actions.
    """

    kind = "table"

    def __init__(self, table):
        table = np.array(table, dtype=np.float64)
        if table.ndim != 3:
            raise ValueError(f"Policy table must have shape (H, S, A), got {table.shape}.")
        if np.any(table < 0) or np.any(np.abs(table.sum(axis=2) - 1) > 1e-12):
            raise ValueError("Policy rows must be distributions over actions.")
        super().__init__(table.shape[0], table.shape[2])
        self._table = table

    @classmethod
    def deterministic(cls, actions, action_count):
        """A policy from an (H, S) array of actions, with |A| given."""
        actions = np.asarray(actions, dtype=np.int64)
        H, S = actions.shape
        probs = np.zeros((H, S, action_count))
        probs[np.arange(H)[:, None], np.arange(S)[None, :], actions] = 1.0
        return cls(probs)

    @classmethod
    def uniform(cls, horizon, state_count, action_count):
        return cls(np.full((horizon, state_count, action_count), 1.0 / action_count))

    @property
    def table(self):
        return self._table.copy()

    def _probabilities(self, h, states):
        index = state_index(states, self._table.shape[1])
        return self._table[h - 1, index]


class UniformPolicy(Policy):
    """Uniform over actions at every state; works on any support."""

    kind = "table"

    def _probabilities(self, h, states):
        return np.full((len(states), self.action_count), 1.0 / self.action_count)
