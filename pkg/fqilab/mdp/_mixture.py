"""Sphere-supported MDPs whose rewards and transition densities lie in a
known function space by construction.

Transitions are J-component mixtures P_h(. | x, a) = sum_j w_j(x, a) rho_j,
with projected-normal components rho_j and weights that are affine in a
feature of x: w_j = u_j + v_j phi(x, c_{j,a}) for j < J, and the last weight
is one minus the rest. Relative to rho_bar = (1/J) sum_j rho_j the density
is sum_j w_j(x, a) q_j(x'), with q in the simplex scaled by J, so its norm
in x is a convex function of q maximized at a vertex q = J e_i.
"""

import numpy as np
from scipy import special

from ..kernels import ZonalKernel, gram
from ..utils import (
    as_points,
    logger,
    normalize_rows,
    stream_rng,
    uniform_sphere,
    STREAM_ENV,
)
from ._base import EpisodicMdp


class ReluRidge:
    """The ridge feature phi(x, c) = relu(c . x) for unit directions c."""

    feature_id = "relu"
    sphere_range = (0.0, 1.0)

    def cross(self, xs, cs):
        return np.maximum(as_points(xs) @ as_points(cs).T, 0.0)

    def to_dict(self):
        return {"id": self.feature_id}


def relu_mean(dim):
    """E relu(w . x) for w uniform on S^{dim-1} and any unit x."""
    return float(np.exp(special.gammaln(dim / 2) - special.gammaln((dim + 1) / 2)) / (2 * np.sqrt(np.pi)))


class MixtureMdp(EpisodicMdp):
    """A sphere MDP with mixture transitions and feature-expansion rewards.

    Parameters
    ----------
    feature : Kernel or ReluRidge
        The feature phi(x, c), exposing ``cross(xs, cs)``.
    reward_centers : ndarray
        Shape (H, A, R, d).
    reward_coeffs : ndarray
        Shape (H, A, R); r_h(x, a) = sum_i coeff_i phi(x, center_i).
    weight_centers : ndarray
        Shape (H, A, J-1, d).
    weight_offsets : ndarray
        The u_j, shape (H, J-1).
    weight_slopes : ndarray
        The v_j, shape (H, J-1).
    means : ndarray
        Component mean directions, shape (J, d).
    spread : float
        Scale of the normal perturbation before projecting to the sphere.
    metadata : dict
        Certified constants.
    """

    def __init__(
        self,
        feature,
        reward_centers,
        reward_coeffs,
        weight_centers,
        weight_offsets,
        weight_slopes,
        means,
        spread,
        metadata=None,
    ):
        means = as_points(means)
        H, A, _, d = np.shape(reward_centers)
        super().__init__(d, H, A, "sphere", metadata)
        self._feature = feature
        self._reward_centers = np.asarray(reward_centers, dtype=np.float64)
        self._reward_coeffs = np.asarray(reward_coeffs, dtype=np.float64)
        self._weight_centers = np.asarray(weight_centers, dtype=np.float64)
        self._u = np.asarray(weight_offsets, dtype=np.float64)
        self._v = np.asarray(weight_slopes, dtype=np.float64)
        self._means = means
        self._spread = float(spread)
        J = len(means)
        if self._weight_centers.shape != (H, A, J - 1, d):
            raise ValueError("Weight centers must have shape (H, A, J-1, d).")
        if self._u.shape != (H, J - 1) or self._v.shape != (H, J - 1):
            raise ValueError("Weight offsets and slopes must have shape (H, J-1).")

    @property
    def feature(self):
        return self._feature

    @property
    def mixture_size(self):
        return len(self._means)

    def weights(self, states, actions, h):
        """Mixture weights w_j(x_i, a_i), shape (n, J)."""
        states, actions = self._check_query(states, actions, h)
        J = self.mixture_size
        w = np.empty((len(states), J))
        for a in np.unique(actions):
            sel = actions == a
            phi = self._feature.cross(states[sel], self._weight_centers[h - 1, a])
            w[sel, : J - 1] = self._u[h - 1] + self._v[h - 1] * phi
        w[:, J - 1] = 1.0 - w[:, : J - 1].sum(axis=1)
        return w

    def sample_states(self, rng, n):
        return uniform_sphere(rng, n, self.state_dim)

    def sample_components(self, rng, components):
        """Draw one point from rho_j for every entry j of ``components``."""
        components = np.asarray(components, dtype=np.int64)
        g = rng.standard_normal((len(components), self.state_dim))
        y = self._means[components] + self._spread * g
        out = normalize_rows(y)
        zero = np.linalg.norm(y, axis=1) == 0
        out[zero] = self._means[components[zero]]
        return out

    def sample_reference(self, rng, n):
        """Draw n points from rho_bar = (1/J) sum_j rho_j."""
        return self.sample_components(rng, rng.integers(self.mixture_size, size=n))

    def _reward(self, states, actions, h):
        r = np.empty(len(states))
        for a in np.unique(actions):
            sel = actions == a
            phi = self._feature.cross(states[sel], self._reward_centers[h - 1, a])
            r[sel] = phi @ self._reward_coeffs[h - 1, a]
        # Round-off only; the construction keeps rewards inside [0, 1]
        return np.clip(r, 0.0, 1.0)

    def _transition(self, states, actions, h, rng):
        w = self.weights(states, actions, h)
        u = rng.random(len(states))
        comp = np.minimum((np.cumsum(w, axis=1) <= u[:, None]).sum(axis=1), self.mixture_size - 1)
        return self.sample_components(rng, comp)


def _draw_weights(rng, J, lo, hi, coupling, max_tries):
    scale = max(abs(lo), abs(hi), 1e-300)
    for attempt in range(max_tries):
        u = rng.uniform(0.5, 1.0, J - 1) / J
        v = coupling * rng.uniform(-1.0, 1.0, J - 1) * u / (2 * scale)
        low = u + np.minimum(v * lo, v * hi)
        high = u + np.maximum(v * lo, v * hi)
        last_low = 1.0 - high.sum()
        last_high = 1.0 - low.sum()
        if low.min() >= 0 and high.max() <= 1 and last_low >= 0 and last_high <= 1:
            return u, v
        logger.debug(f"Mixture weight draw {attempt} left [0, 1], retrying.")
    raise RuntimeError(f"Could not draw valid mixture weights in {max_tries} tries.")


def _vertex_terms(u, v):
    # For q = J e_i: density = c + sum_j beta_j phi(., c_j)
    J = len(u) + 1
    terms = []
    for i in range(J):
        q = np.zeros(J)
        q[i] = J
        c = q[-1] + np.sum((q[:-1] - q[-1]) * u)
        beta = (q[:-1] - q[-1]) * v
        terms.append((c, beta))
    return terms


def _build(seed, dim, horizon, action_count, mixture_size, feature, lo, hi, reward_size, spread, coupling, max_tries):
    if mixture_size < 2:
        raise ValueError(f"Mixture size must be at least 2, got {mixture_size}.")
    if dim < 2:
        raise ValueError(f"Sphere dimension must be at least 2, got {dim}.")
    rng = stream_rng(seed, 0, 0, STREAM_ENV)
    H, A, J, R, d = horizon, action_count, mixture_size, reward_size, dim
    means = uniform_sphere(rng, J, d)
    weight_centers = uniform_sphere(rng, H * A * (J - 1), d).reshape(H, A, J - 1, d)
    u = np.empty((H, J - 1))
    v = np.empty((H, J - 1))
    for h in range(H):
        u[h], v[h] = _draw_weights(rng, J, lo, hi, coupling, max_tries)
    reward_centers = uniform_sphere(rng, H * A * R, d).reshape(H, A, R, d)
    reward_coeffs = rng.dirichlet(np.ones(R), size=(H, A)) * rng.uniform(0.5, 1.0, (H, A, 1)) / hi
    return means, weight_centers, u, v, reward_centers, reward_coeffs


def make_rkhs_mdp(
    seed,
    dim,
    horizon,
    action_count,
    mixture_size,
    kernel,
    *,
    reward_size=3,
    spread=0.5,
    coupling=1.0,
    max_tries=100,
):
    """A sphere MDP whose rewards and densities are explicit RKHS elements.

    Rewards are r_h(., a) = sum_i b_i k(., z_i) with b_i >= 0, scaled into
    [0, 1], so the kernel must be non-negative on the sphere. The density
    relative to rho_bar is affine in kernel sections and lies in the RKHS
    of k + 1.

    The metadata holds K_x, K_r (largest reward norm), K_p (density norm
    certificate, in the RKHS of k + 1) and the resulting concentration
    bound sqrt(K_x) |A|^2 K_p.

    Parameters
    ----------
    coupling : float
        Scale of the state dependence of the weights; 0 makes the
        transitions independent of (x, a).
    """
    if not isinstance(kernel, ZonalKernel):
        raise TypeError(f"Need a sphere kernel, got {kernel!r}.")
    lo, hi = kernel.sphere_range
    if lo < 0:
        raise ValueError(f"Kernel {kernel.kernel_id} takes negative values; rewards need k >= 0.")
    means, wc, u, v, rc, rb = _build(
        seed, dim, horizon, action_count, mixture_size, kernel, lo, hi,
        reward_size, spread, coupling, max_tries,
    )
    k_r = max(
        np.sqrt(max(rb[h, a] @ gram(kernel, rc[h, a]) @ rb[h, a], 0.0))
        for h in range(horizon)
        for a in range(action_count)
    )
    k_p = 0.0
    for h in range(horizon):
        terms = _vertex_terms(u[h], v[h])
        for a in range(action_count):
            g = gram(kernel, wc[h, a])
            for c, beta in terms:
                k_p = max(k_p, np.sqrt(c * c + max(beta @ g @ beta, 0.0)))
    k_x = kernel.bound
    metadata = {
        "generator": "rkhs",
        "seed": int(seed),
        "kernel": kernel.to_dict(),
        "mixture_size": int(mixture_size),
        "spread": float(spread),
        "K_x": float(k_x),
        "K_r": float(k_r),
        "K_p": float(k_p),
        "kappa_bound": float(np.sqrt(k_x) * action_count**2 * k_p),
        "reference": "rho_bar",
    }
    return MixtureMdp(kernel, rc, rb, wc, u, v, means, spread, metadata)


def make_barron_mdp(
    seed,
    dim,
    horizon,
    action_count,
    mixture_size,
    *,
    reward_size=8,
    spread=0.5,
    coupling=1.0,
    max_tries=100,
):
    """A sphere MDP whose rewards and densities are finite ReLU ridge sums.

    Constants are Barron functions on the sphere because the mean of
    relu(w . x) over uniform w does not depend on x. The metadata holds
    B_r, B_p and the concentration bound |A|^2 B_p.
    """
    feature = ReluRidge()
    lo, hi = feature.sphere_range
    means, wc, u, v, rc, rb = _build(
        seed, dim, horizon, action_count, mixture_size, feature, lo, hi,
        reward_size, spread, coupling, max_tries,
    )
    b_r = float(rb.sum(axis=2).max())
    c_d = relu_mean(dim)
    b_p = 0.0
    for h in range(horizon):
        for c, beta in _vertex_terms(u[h], v[h]):
            b_p = max(b_p, abs(c) / c_d + np.abs(beta).sum())
    metadata = {
        "generator": "barron",
        "seed": int(seed),
        "mixture_size": int(mixture_size),
        "spread": float(spread),
        "K_x": 1.0,
        "B_r": b_r,
        "B_p": float(b_p),
        "kappa_bound": float(action_count**2 * b_p),
        "reference": "rho_bar",
    }
    return MixtureMdp(feature, rc, rb, wc, u, v, means, spread, metadata)
