"""Regularized kernel regression with the max-over-actions norm penalty.

The fit minimizes

    sum_a (1/2n) sum_{i: a_i = a} |y_i - f_a(x_i)|^2 + lam * max_a |f_a|_H

over the span of kernel sections at the samples of each action. Writing
t for a shared radius, the problem becomes a scalar convex minimization
over t of sum_a L_a(t) + lam * t, where L_a(t) is the best loss of action
a within the ball |f_a|_H <= t. Each L_a comes from one eigendecomposition
of the action's Gram matrix and a monotone root-find on the Lagrange
multiplier.
"""

import numpy as np
from scipy import linalg, optimize

from ..utils import as_points, logger
from ._base import gram as build_gram, rkhs_norm
from ._make import kernel_from_dict


RIDGE = 1e-12


class BallSolver:
    """Least squares over the ball b^T G b <= t^2, for one Gram matrix.

    The eigendecomposition is computed once; ``solve()`` is cheap for any
    number of radii.
    """

    def __init__(self, gram, targets, ridge=RIDGE):
        gram = np.asarray(gram, dtype=np.float64)
        targets = np.asarray(targets, dtype=np.float64).ravel()
        if gram.ndim != 2 or gram.shape[0] != gram.shape[1]:
            raise ValueError(f"Gram matrix must be square, got {gram.shape}.")
        if gram.shape[0] != len(targets):
            raise ValueError(
                f"Gram of size {gram.shape[0]} does not match {len(targets)} targets."
            )
        self.ridge = ridge
        s, u = linalg.eigh(gram + ridge * np.eye(len(targets)))
        z = u.T @ targets
        # Directions in the (numerical) null space cannot be fitted; their
        # share of the targets is a constant floor of the loss.
        keep = s > 1e-10 * max(float(s.max()), ridge)
        self._s = s[keep]
        self._u = u[:, keep]
        self._z = z[keep]
        self._total = 0.5 * float(z @ z)
        self._floor = 0.5 * float(np.sum(z[~keep] ** 2))
        self._sz2 = self._s * self._z**2
        self.free_norm = float(np.sqrt(np.sum(self._z**2 / self._s)))

    def _multiplier(self, radius):
        # |f|^2 = sum s z^2 / (s + mu)^2 is decreasing in mu
        def excess(mu):
            return np.sqrt(np.sum(self._sz2 / (self._s + mu) ** 2)) - radius

        mu_hi = np.sqrt(np.sum(self._sz2)) / radius
        return optimize.brentq(excess, 0.0, mu_hi, xtol=1e-15, rtol=1e-13)

    def solve(self, radius):
        """Return (coefficients, half squared residual) at the given radius."""
        if radius < 0:
            raise ValueError(f"Radius must be non-negative, got {radius}.")
        size = self._u.shape[0]
        if radius == 0:
            return np.zeros(size), self._total
        if not np.isfinite(radius) or self.free_norm <= radius:
            c = self._z / self._s
            return self._u @ c, self._floor
        mu = self._multiplier(radius)
        c = self._z / (self._s + mu)
        residual = self._z * mu / (self._s + mu)
        return self._u @ c, 0.5 * float(residual @ residual) + self._floor

    def loss(self, radius):
        return self.solve(radius)[1]


def constrained_krr(gram, targets, radius):
    """Minimize (1/2n)|y - G b|^2 subject to b^T G b <= radius^2.

    Parameters
    ----------
    gram : ndarray
        Square Gram matrix of the centers.
    targets : ndarray
        Regression targets, one per center.
    radius : float
        Ball radius t >= 0; ``np.inf`` gives the unconstrained interpolant.

    Returns
    -------
    coeffs : ndarray
    """
    if radius < 0:
        raise ValueError(f"Radius must be non-negative, got {radius}.")
    return BallSolver(gram, targets).solve(radius)[0]


class KernelQ:
    """A step's action-value model in the representer span of its samples.

    For every action a, f(x, a) = sum_i b_{i,a} k(x, c_{i,a}), where the
    centers c_{i,a} are the sampled states that took action a.

    Parameters
    ----------
    kernel : Kernel
        The kernel of the function class.
    centers : list of ndarray
        Per action, an (n_a, d) array of centers.
    coeffs : list of ndarray
        Per action, the n_a coefficients.
    info : dict
        Fit diagnostics, e.g. the objective and regularization constant.
    """

    backend = "kernel"

    def __init__(self, kernel, centers, coeffs, info=None):
        if len(centers) != len(coeffs):
            raise ValueError("Need one coefficient array per center array.")
        self._kernel = kernel
        self._centers = [as_points(c) if len(c) else np.zeros((0, 0)) for c in centers]
        self._coeffs = [np.asarray(b, dtype=np.float64).ravel() for b in coeffs]
        for c, b in zip(self._centers, self._coeffs):
            if len(c) != len(b):
                raise ValueError(f"{len(c)} centers but {len(b)} coefficients.")
        self._norms = np.array(
            [
                rkhs_norm(b, build_gram(kernel, c)) if len(b) else 0.0
                for c, b in zip(self._centers, self._coeffs)
            ]
        )
        self.info = dict(info or {})

    @classmethod
    def zeros(cls, kernel, action_count, info=None):
        return cls(kernel, [np.zeros((0, 0))] * action_count, [np.zeros(0)] * action_count, info)

    @property
    def kernel(self):
        return self._kernel

    @property
    def action_count(self):
        return len(self._coeffs)

    @property
    def centers(self):
        return list(self._centers)

    @property
    def coeffs(self):
        return list(self._coeffs)

    @property
    def norms(self):
        """Per-action RKHS norms."""
        return self._norms.copy()

    @property
    def regularizer(self):
        """The penalty value max_a |f(., a)|_H."""
        return float(self._norms.max()) if len(self._norms) else 0.0

    def _action_values(self, states, a):
        if len(self._coeffs[a]) == 0:
            return np.zeros(len(states))
        return self._kernel.cross(states, self._centers[a]) @ self._coeffs[a]

    def values(self, states):
        """Evaluate all actions, returning an (n, |A|) array."""
        states = as_points(states)
        out = np.empty((len(states), self.action_count))
        for a in range(self.action_count):
            out[:, a] = self._action_values(states, a)
        return out

    def predict(self, states, actions):
        """Evaluate f(x_i, a_i) for paired states and actions."""
        states = as_points(states)
        actions = np.asarray(actions, dtype=np.int64).ravel()
        if len(actions) != len(states):
            raise ValueError(f"{len(states)} states but {len(actions)} actions.")
        if np.any((actions < 0) | (actions >= self.action_count)):
            raise ValueError(f"Action index out of range for {self.action_count} actions.")
        out = np.zeros(len(states))
        for a in np.unique(actions):
            sel = actions == a
            out[sel] = self._action_values(states[sel], a)
        return out

    def to_dict(self):
        return {
            "backend": self.backend,
            "kernel": self._kernel.to_dict(),
            "ridge": RIDGE,
            "centers": [c.tolist() for c in self._centers],
            "coeffs": [b.tolist() for b in self._coeffs],
            "norms": self._norms.tolist(),
            "info": dict(self.info),
        }

    @classmethod
    def from_dict(cls, d):
        kernel = kernel_from_dict(d["kernel"])
        centers = [np.asarray(c, dtype=np.float64) for c in d["centers"]]
        centers = [c if c.size else np.zeros((0, 0)) for c in centers]
        return cls(kernel, centers, d["coeffs"], d.get("info"))


def predict(model, x, a):
    """Evaluate a model at a single state and action."""
    return float(model.predict(np.asarray(x, dtype=np.float64)[None], [a])[0])


def fit_max_norm(states, actions, targets, kernel, lam, action_count):
    """Fit a KernelQ with the max-over-actions RKHS norm penalty.

    Parameters
    ----------
    states : ndarray
        (n, d) sampled states.
    actions : ndarray
        n action indices in ``range(action_count)``.
    targets : ndarray
        n regression targets.
    kernel : Kernel
        Kernel of the function class.
    lam : float
        Regularization constant, must be positive.
    action_count : int
        Number of actions |A|.
    """
    if not lam > 0:
        raise ValueError(f"Regularization constant must be positive, got {lam}.")
    actions = np.asarray(actions, dtype=np.int64).ravel()
    targets = np.asarray(targets, dtype=np.float64).ravel()
    n = len(targets)
    if len(actions) != n:
        raise ValueError(f"{n} targets but {len(actions)} actions.")
    if n == 0:
        return KernelQ.zeros(kernel, action_count, {"objective": 0.0, "lam": lam, "radius": 0.0})
    states = as_points(states)
    if len(states) != n:
        raise ValueError(f"{n} targets but {len(states)} states.")
    if np.any((actions < 0) | (actions >= action_count)):
        raise ValueError(f"Action index out of range for {action_count} actions.")

    centers, solvers = [], []
    for a in range(action_count):
        sel = actions == a
        centers.append(states[sel])
        if np.any(sel):
            solvers.append(BallSolver(build_gram(kernel, states[sel]), targets[sel]))
        else:
            solvers.append(None)
    active = [s for s in solvers if s is not None]

    def objective(t):
        return sum(s.loss(t) for s in active) / n + lam * t

    # Beyond the largest unconstrained norm the loss is flat
    t_max = max(s.free_norm for s in active)
    candidates = [0.0, t_max]
    if t_max > 0:
        res = optimize.minimize_scalar(
            objective, bounds=(0.0, t_max), method="bounded", options={"xatol": 1e-9}
        )
        candidates.append(float(res.x))
    values = [objective(t) for t in candidates]
    radius = candidates[int(np.argmin(values))]
    logger.debug(f"fit_max_norm: n={n}, lam={lam:.4g}, radius={radius:.6g}")

    coeffs = [
        s.solve(radius)[0] if s is not None else np.zeros(0) for s in solvers
    ]
    info = {"objective": float(min(values)), "lam": float(lam), "radius": float(radius)}
    return KernelQ(kernel, centers, coeffs, info)
