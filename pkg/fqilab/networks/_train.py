"""Training of two-layer ReLU Q-networks with the path-norm penalty.

The proximal shrink minimizes the same objective as a subgradient step on
the penalty would, loss plus lambda times the max path norm, and it can
set a neuron exactly to zero.
"""

import dataclasses

import numpy as np

from ..utils import as_points, logger, stream_rng, STREAM_PLAN
from ._model import TwoLayerQ, relu


@dataclasses.dataclass(frozen=True)
class TrainConfig:
    """Settings for ``train_regularized``.

    The step size at update t is ``step_size / (1 + t / step_decay)``.
    Gradients are taken per neuron and scaled by the width, so the
    step size does not need retuning when the width changes.
    """

    width: int = 64
    epochs: int = 2000
    batch: int = 64
    step_size: float = 0.5
    step_decay: float = 2000.0
    seed: int = 0

    def __post_init__(self):
        if self.width < 1:
            raise ValueError(f"Width must be at least 1, got {self.width}.")
        if self.epochs < 0:
            raise ValueError(f"Epochs must be non-negative, got {self.epochs}.")
        if self.batch < 1:
            raise ValueError(f"Batch size must be at least 1, got {self.batch}.")
        if not self.step_size > 0 or not self.step_decay > 0:
            raise ValueError("Step size and step decay must be positive.")


def _objective(outer, inner, states, actions, targets, lam, level):
    n = len(targets)
    m = outer.shape[1]
    f = np.empty(n)
    for a in range(outer.shape[0]):
        sel = actions == a
        f[sel] = relu(states[sel] @ inner[a].T) @ outer[a] / m
    resid = targets - np.clip(f, 0.0, level)
    path = np.mean(np.abs(outer) * np.linalg.norm(inner, axis=2), axis=1).max()
    return 0.5 * float(resid @ resid) / n + lam * float(path)


def _shrink(outer, inner, action, amount):
    # Proximal step on the path norm of one action: soft-threshold the
    # outer weights, then shrink each direction's length.
    norms = np.linalg.norm(inner[action], axis=1)
    b = outer[action]
    new_b = np.sign(b) * np.maximum(np.abs(b) - amount * norms, 0.0)
    shrink = np.maximum(norms - amount * np.abs(b), 0.0)
    with np.errstate(invalid="ignore", divide="ignore"):
        scale = np.where(norms > 0, shrink / norms, 1.0)
    outer[action] = new_b
    inner[action] *= scale[:, None]


def train_regularized(states, actions, targets, lam, level, config, action_count):
    """Fit a TwoLayerQ to the clamped, path-norm regularized objective.

    Minimizes (1/2n) sum_i |y_i - clamp(f(x_i, a_i))|^2 + lam * path_norm(f),
    where clamp truncates to [0, level]. The clamp passes gradient only on
    the closed interval [0, level]. Minibatch gradient steps on the loss
    alternate with a proximal shrinkage for every action that attains
    the maximal path norm. The full-batch objective is evaluated after
    every epoch and the best iterate, including the initial network,
    is returned.

    Parameters
    ----------
    states : ndarray
        (n, d) sampled states.
    actions : ndarray
        n action indices.
    targets : ndarray
        n regression targets.
    lam : float
        Regularization constant, lam >= 0.
    level : float
        Clamp level H - h + 1.
    config : TrainConfig
        Width, epochs, batch size, step-size schedule and seed.
    action_count : int
        Number of actions |A|.
    """
    if lam < 0:
        raise ValueError(f"Regularization constant must be non-negative, got {lam}.")
    if level < 0:
        raise ValueError(f"Clamp level must be non-negative, got {level}.")
    states = as_points(states)
    actions = np.asarray(actions, dtype=np.int64).ravel()
    targets = np.asarray(targets, dtype=np.float64).ravel()
    n, dim = states.shape
    if len(actions) != n or len(targets) != n:
        raise ValueError("States, actions and targets must have the same length.")
    if np.any((actions < 0) | (actions >= action_count)):
        raise ValueError(f"Action index out of range for {action_count} actions.")

    m = config.width
    net = TwoLayerQ.initial(action_count, m, dim, config.seed)
    outer, inner = net.outer, net.inner
    if n == 0:
        return TwoLayerQ(outer, inner, {"objective": 0.0, "initial_objective": 0.0})
    initial = _objective(outer, inner, states, actions, targets, lam, level)
    best = (initial, outer.copy(), inner.copy(), 0)

    limit = 10.0 * max(initial, 1e-12)
    rng = stream_rng(config.seed, 0, 0, STREAM_PLAN)
    t = 0
    for epoch in range(1, config.epochs + 1):
        order = rng.permutation(n)
        for start in range(0, n, config.batch):
            idx = order[start : start + config.batch]
            x, a_b, y = states[idx], actions[idx], targets[idx]
            eta = config.step_size / (1.0 + t / config.step_decay)
            for a in np.unique(a_b):
                sel = a_b == a
                xa = x[sel]
                pre = xa @ inner[a].T
                act = relu(pre)
                f = act @ outer[a] / m
                inside = (f >= 0.0) & (f <= level)
                grad_f = np.where(inside, np.clip(f, 0.0, level) - y[sel], 0.0) / len(idx)
                # Per-neuron gradients times m
                g_outer = grad_f @ act
                g_inner = ((grad_f[:, None] * (pre > 0)) * outer[a][None, :]).T @ xa
                outer[a] -= eta * g_outer
                inner[a] -= eta * g_inner
            if lam > 0:
                path = np.mean(np.abs(outer) * np.linalg.norm(inner, axis=2), axis=1)
                for a in np.flatnonzero(path >= path.max() - 1e-15):
                    _shrink(outer, inner, a, eta * lam)
            t += 1

        value = _objective(outer, inner, states, actions, targets, lam, level)
        if not np.isfinite(value) or value > limit:
            msg = (
                f"Training diverged at epoch {epoch}: objective {value:.6g} exceeds "
                f"10x the initial objective {initial:.6g}; lower the step size."
            )
            logger.error(msg)
            raise RuntimeError(msg)
        if value < best[0]:
            best = (value, outer.copy(), inner.copy(), epoch)

    value, outer, inner, epoch = best
    logger.debug(f"train_regularized: best objective {value:.6g} at epoch {epoch}")
    info = {"objective": value, "initial_objective": initial, "best_epoch": epoch}
    return TwoLayerQ(outer, inner, info)
