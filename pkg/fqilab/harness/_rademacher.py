"""Monte Carlo estimates of the empirical Rademacher complexity of norm balls.

For a class F and points z_1..z_n, the complexity is
E_xi sup_{f in F} (1/n) sum_i xi_i f(z_i) with i.i.d. random signs xi.
Both balls below are sets of action-value functions f(x, a), with one
norm constraint per action.
"""

import dataclasses

import numpy as np

from ..kernels import gram
from ..networks import relu
from ..utils import as_points, stream_rng, uniform_sphere, STREAM_RADEMACHER


@dataclasses.dataclass
class RademacherEstimate:
    """The Monte Carlo estimate with its standard error.

    ``bound`` is the closed-form envelope M r / sqrt(n), and ``envelope``
    a Monte Carlo upper estimate of the complexity (equal to ``value``
    when the per-draw supremum is exact).
    """

    value: float
    stderr: float
    bound: float
    envelope: float
    trials: int


def _actions(actions, n, action_count):
    if actions is None:
        return np.zeros(n, dtype=np.int64)
    actions = np.asarray(actions, dtype=np.int64).ravel()
    if len(actions) != n:
        raise ValueError(f"{n} points but {len(actions)} actions.")
    if np.any((actions < 0) | (actions >= action_count)):
        raise ValueError(f"Action index out of range for {action_count} actions.")
    return actions


class KernelBall:
    """Functions with |f(., a)|_H <= r for every action a.

    The supremum for one sign draw is exact:
    (r/n) sum_a sqrt(xi_a^T G_a xi_a), where G_a is the Gram matrix of the
    points paired with action a.
    """

    def __init__(self, kernel, points, radius, actions=None, action_count=1):
        self.kernel = kernel
        self.points = as_points(points)
        self.radius = float(radius)
        self.action_count = int(action_count)
        self.actions = _actions(actions, len(self.points), self.action_count)
        if self.radius < 0:
            raise ValueError(f"Radius must be non-negative, got {self.radius}.")
        self._grams = []
        for a in range(self.action_count):
            sel = np.flatnonzero(self.actions == a)
            G = gram(kernel, self.points[sel]) if len(sel) else np.zeros((0, 0))
            self._grams.append((sel, G))

    @property
    def n(self):
        return len(self.points)

    def bound(self):
        """r sqrt(|A| K_x) / sqrt(n), with K_x the sup of k(x, x)."""
        return self.radius * np.sqrt(self.action_count * self.kernel.bound) / np.sqrt(self.n)

    def sup(self, signs):
        total = 0.0
        for sel, G in self._grams:
            if len(sel):
                xi = signs[sel]
                total += np.sqrt(max(float(xi @ G @ xi), 0.0))
        value = self.radius * total / self.n
        return value, value


class PathNormBall:
    """Two-layer ReLU networks with path norm at most r for every action.

    The supremum over the ball is attained by a single neuron,
    (r/n) max_{|w| = 1} |sum_i xi_i relu(w . x_i)|. It is estimated from
    below by searching over ``directions`` random unit vectors plus the
    directions of the signed sums. By the contraction inequality the mean
    of (2r/n) |sum_i xi_i x_i| over sign draws bounds the complexity from
    above; it is reported as the envelope.
    """

    def __init__(self, points, radius, actions=None, action_count=1, directions=256, seed=0):
        self.points = as_points(points)
        self.radius = float(radius)
        self.action_count = int(action_count)
        self.actions = _actions(actions, len(self.points), self.action_count)
        if self.radius < 0:
            raise ValueError(f"Radius must be non-negative, got {self.radius}.")
        rng = stream_rng(seed, 0, 0, STREAM_RADEMACHER)
        self._directions = uniform_sphere(rng, int(directions), self.points.shape[1])

    @property
    def n(self):
        return len(self.points)

    def bound(self):
        """2 r sqrt(|A|) / sqrt(n), for points of norm at most one."""
        return 2.0 * self.radius * np.sqrt(self.action_count) / np.sqrt(self.n)

    def sup(self, signs):
        raw, envelope = 0.0, 0.0
        for a in range(self.action_count):
            sel = self.actions == a
            if not np.any(sel):
                continue
            x, xi = self.points[sel], signs[sel]
            s = xi @ x
            norm = np.linalg.norm(s)
            envelope += 2.0 * norm
            candidates = self._directions
            if norm > 0:
                candidates = np.vstack([candidates, s / norm, -s / norm])
            scores = xi @ relu(x @ candidates.T)
            raw += float(np.max(np.abs(scores)))
        scale = self.radius / self.n
        return scale * raw, scale * envelope


def estimate_rademacher(ball, trials, seed=0):
    """Monte Carlo estimate of the Rademacher complexity of a ball.

    Parameters
    ----------
    ball : KernelBall or PathNormBall
        The function class over fixed points.
    trials : int
        Number of sign draws.
    seed : int
        Seed of the sign stream.

    Returns
    -------
    RademacherEstimate
    """
    trials = int(trials)
    if trials < 1:
        raise ValueError(f"Need at least one trial, got {trials}.")
    rng = stream_rng(seed, 1, 0, STREAM_RADEMACHER)
    values = np.empty(trials)
    envelopes = np.empty(trials)
    for i in range(trials):
        signs = np.where(rng.random(ball.n) < 0.5, -1.0, 1.0)
        values[i], envelopes[i] = ball.sup(signs)
    stderr = float(values.std(ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0
    return RademacherEstimate(
        float(values.mean()), stderr, float(ball.bound()), float(envelopes.mean()), trials
    )
