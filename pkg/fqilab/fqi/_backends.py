"""Regression backends for fitted Q-iteration.

A backend turns (states, actions, targets) at one step into a model with
``values(states)``, ``predict(states, actions)`` and ``regularizer``.
"""

import dataclasses

import numpy as np

from ..kernels import fit_max_norm, make_kernel, Kernel
from ..networks import TrainConfig, train_regularized


DEFAULT_LAM_SCALE = 2.0


def lambda_threshold(radius_constant, horizon, n, scale=DEFAULT_LAM_SCALE):
    """The regularization constant c M H / sqrt(n), with c = 2 by default.

    c = 2 is the worst-case constant that guarantees the high-probability
    bound. It is loose: on tabular problems the max-norm fit shrinks the
    largest value table by about |S| |A| lambda in norm, so with c = 2 the
    fit stays at zero until n is in the tens of thousands. Smaller c keeps
    the n^(-1/2) schedule.
    """
    if n < 1:
        raise ValueError(f"Sample size must be at least 1, got {n}.")
    if not scale > 0:
        raise ValueError(f"Lambda scale must be positive, got {scale}.")
    return scale * radius_constant * horizon / np.sqrt(n)


def auto_lambda(mdp, backend, n):
    """The default lambda of ``backend`` on ``mdp`` with n samples per step.

    M is sqrt(|A| K_x) for kernel backends and 2 sqrt(|A|) for networks;
    the constant c is the backend's ``lam_scale``.
    """
    return lambda_threshold(backend.radius_constant(mdp), mdp.horizon, n, backend.lam_scale)


class Backend:
    """Base class. ``lam`` is a positive number or "auto".

    ``lam_scale`` is the constant c of the "auto" rule c M H / sqrt(n).
    """

    kind = None

    def __init__(self, lam="auto", lam_scale=DEFAULT_LAM_SCALE):
        if lam != "auto":
            lam = float(lam)
            if lam < 0:
                raise ValueError(f"Regularization constant must be non-negative, got {lam}.")
        lam_scale = float(lam_scale)
        if not lam_scale > 0:
            raise ValueError(f"Lambda scale must be positive, got {lam_scale}.")
        self._lam = lam
        self._lam_scale = lam_scale

    @property
    def lam(self):
        return self._lam

    @property
    def lam_scale(self):
        return self._lam_scale

    def radius_constant(self, mdp):
        """The Rademacher constant M of the function class on this MDP."""
        raise NotImplementedError()

    def resolve_lambda(self, mdp, n):
        if self._lam == "auto":
            return auto_lambda(mdp, self, n)
        return self._lam

    def fit(self, states, actions, targets, *, lam, level, action_count, seed=0):
        raise NotImplementedError()


class KernelBackend(Backend):
    """Max-norm regularized kernel regression, without truncation in the loss.

    Parameters
    ----------
    kernel : Kernel
        The kernel of the function class.
    lam : float or "auto"
        Regularization constant; "auto" uses c M H / sqrt(n) with
        M = sqrt(|A| K_x).
    lam_scale : float
        The constant c of the "auto" rule.
    """

    kind = "kernel"

    def __init__(self, kernel, lam="auto", lam_scale=DEFAULT_LAM_SCALE):
        super().__init__(lam, lam_scale)
        if not isinstance(kernel, Kernel):
            raise TypeError(f"Expected a Kernel, got {kernel!r}.")
        self.kernel = kernel

    def radius_constant(self, mdp):
        return float(np.sqrt(mdp.action_count * self.kernel.bound))

    def fit(self, states, actions, targets, *, lam, level, action_count, seed=0):
        return fit_max_norm(states, actions, targets, self.kernel, lam, action_count)


class NetworkBackend(Backend):
    """Two-layer ReLU networks with the clamped loss and path-norm penalty.

    "auto" regularization uses M = 2 sqrt(|A|).
    """

    kind = "network"

    def __init__(self, config=None, lam="auto", lam_scale=DEFAULT_LAM_SCALE):
        super().__init__(lam, lam_scale)
        self.config = config or TrainConfig()

    def radius_constant(self, mdp):
        return 2.0 * float(np.sqrt(mdp.action_count))

    def fit(self, states, actions, targets, *, lam, level, action_count, seed=0):
        config = dataclasses.replace(self.config, seed=int(seed))
        return train_regularized(states, actions, targets, lam, level, config, action_count)


def make_backend(spec, lam="auto", dim=None, lam_scale=DEFAULT_LAM_SCALE):
    """Create a backend from a config mapping.

    ``{"kind": "kernel", "kernel": "laplacian", "params": {...}}`` or
    ``{"kind": "network", "width": 64, "epochs": 200, ...}``.
    """
    spec = dict(spec)
    kind = spec.pop("kind", "kernel")
    if kind == "kernel":
        params = dict(spec.pop("params", None) or {})
        if dim is not None:
            params.setdefault("dim", dim)
        kernel = make_kernel(spec.pop("kernel", "delta"), **params)
        if spec:
            raise ValueError(f"Unknown kernel backend options: {sorted(spec)}.")
        return KernelBackend(kernel, lam, lam_scale)
    elif kind == "network":
        return NetworkBackend(TrainConfig(**spec), lam, lam_scale)
    raise ValueError(f"Unknown backend kind {kind!r}, use 'kernel' or 'network'.")
