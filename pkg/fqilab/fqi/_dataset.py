import dataclasses

import numpy as np

from ..utils import as_points


@dataclasses.dataclass(frozen=True)
class StepDataset:
    """The n transitions (S_h^i, A_h^i, r_h^i, S_{h+1}^i) drawn at step h."""

    step: int
    states: np.ndarray
    actions: np.ndarray
    rewards: np.ndarray
    next_states: np.ndarray
    source: str = ""

    def __post_init__(self):
        states = as_points(self.states)
        next_states = as_points(self.next_states, states.shape[1])
        actions = np.asarray(self.actions, dtype=np.int64).ravel()
        rewards = np.asarray(self.rewards, dtype=np.float64).ravel()
        n = len(states)
        if not (len(actions) == len(rewards) == len(next_states) == n):
            raise ValueError("All fields of a StepDataset must have the same length.")
        if np.any(rewards < 0) or np.any(rewards > 1):
            raise ValueError("Rewards must lie in [0, 1].")
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "next_states", next_states)
        object.__setattr__(self, "actions", actions)
        object.__setattr__(self, "rewards", rewards)

    @property
    def n(self):
        return len(self.rewards)


def build_targets(dataset, fitted=None, horizon=None):
    """Regression targets y_i = r_i + max_a' Q_{h+1}(S_{h+1}^i, a').

    Parameters
    ----------
    dataset : StepDataset
        Samples at step h.
    fitted : FittedQ or None
        Holds the truncated model for step h + 1. Not needed at h = H,
        where Q_{H+1} = 0.
    horizon : int
        The horizon H; taken from ``fitted`` when not given.
    """
    if horizon is None:
        if fitted is None:
            raise ValueError("Need the horizon or a fitted model to build targets.")
        horizon = fitted.horizon
    h = dataset.step
    if h == horizon:
        return dataset.rewards.copy()
    if fitted is None or not fitted.has_step(h + 1):
        raise ValueError(f"Targets at step {h} need the fitted model of step {h + 1}.")
    next_values = fitted.values(h + 1, dataset.next_states).max(axis=1)
    return dataset.rewards + next_values
