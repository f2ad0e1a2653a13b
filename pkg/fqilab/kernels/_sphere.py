"""Dot-product kernels on the unit sphere S^{d-1}.

The two ReLU kernels are expectations over a direction w drawn uniformly
from the sphere. For each of them two evaluation rules exist: the closed
form of the expectation, and a disk quadrature that reduces the sphere
expectation to the joint law of (w . x, w . y).
"""

import functools

import numpy as np
from scipy import special
from scipy.interpolate import CubicSpline

from ._base import ZonalKernel


RULES = ("closed", "quadrature")


def laplacian_profile(t):
    t = np.asarray(t, dtype=np.float64)
    return np.exp(-np.sqrt(np.maximum(2.0 - 2.0 * t, 0.0)))


def ntk_profile(t):
    t = np.clip(np.asarray(t, dtype=np.float64), -1.0, 1.0)
    return t * (np.pi - np.arccos(t)) / (2.0 * np.pi)


def arccos_profile(t, dim):
    t = np.clip(np.asarray(t, dtype=np.float64), -1.0, 1.0)
    sin = np.sqrt(np.maximum(1.0 - t * t, 0.0))
    return (sin + (np.pi - np.arccos(t)) * t) / (2.0 * np.pi * dim)


def _radial_rule(dim, nodes):
    # Squared radius s of (w1, w2) has density ~ (1 - s)^((d-4)/2) on [0, 1]
    if dim == 2:
        return np.ones(1), np.ones(1)
    z, wz = special.roots_jacobi(nodes, (dim - 4) / 2, 0.0)
    s = 0.5 * (1.0 + z)
    return np.sqrt(s), wz / wz.sum()


def _angular_rule(theta, nodes):
    # Piecewise Gauss-Legendre, split where w . x or w . y changes sign
    cuts = np.mod([0.5 * np.pi, 1.5 * np.pi, theta + 0.5 * np.pi, theta + 1.5 * np.pi], 2 * np.pi)
    edges = np.unique(np.concatenate([[0.0, 2 * np.pi], cuts]))
    pieces = len(edges) - 1
    z, wz = special.roots_legendre(max(nodes // pieces, 8))
    phis, weights = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        phis.append(0.5 * (b - a) * z + 0.5 * (a + b))
        weights.append(0.5 * (b - a) * wz)
    phis = np.concatenate(phis)
    weights = np.concatenate(weights) / (2 * np.pi)
    return phis, weights


def sphere_pair_expectation(func, theta, dim, nodes=256):
    """Compute E_w func(w . x, w . y, cos(theta)) for w uniform on S^{dim-1}.

    Here x and y are unit vectors at angle ``theta``. The expectation is
    computed with a radial Gauss-Jacobi rule times a piecewise angular
    Gauss-Legendre rule on the disk of (w1, w2) coordinates.
    """
    if dim < 2:
        raise ValueError(f"Sphere dimension must be at least 2, got {dim}.")
    r, wr = _radial_rule(dim, nodes)
    result = np.empty(len(np.atleast_1d(theta)))
    for i, th in enumerate(np.atleast_1d(theta)):
        phi, wphi = _angular_rule(float(th), nodes)
        u = r[:, None] * np.cos(phi)[None, :]
        v = r[:, None] * np.cos(phi - th)[None, :]
        values = func(u, v, np.cos(th))
        result[i] = wr @ values @ wphi
    return result


def _relu_pair(u, v, t):
    return np.maximum(u, 0.0) * np.maximum(v, 0.0)


def _step_pair(u, v, t):
    return t * ((u > 0) & (v > 0))


@functools.lru_cache(maxsize=16)
def _tabulated_profile(kind, dim, nodes, grid=513):
    func = {"arccos1": _relu_pair, "ntk2": _step_pair}[kind]
    theta = np.linspace(0.0, np.pi, grid)
    values = sphere_pair_expectation(func, theta, dim, nodes)
    return CubicSpline(theta, values)


class LaplacianKernel(ZonalKernel):
    """The Laplace kernel k(x, y) = exp(-|x - y|), on the unit sphere."""

    kernel_id = "laplacian"

    def __init__(self, dim=None):
        self.dim = dim

    def profile(self, t):
        return laplacian_profile(t)

    def to_dict(self):
        return {"id": self.kernel_id, "dim": self.dim}


class _ReluExpectationKernel(ZonalKernel):
    def __init__(self, dim=None, rule="closed", nodes=256):
        if rule not in RULES:
            raise ValueError(f"Unknown evaluation rule {rule!r}, use one of {RULES}.")
        if rule == "quadrature" and dim is None:
            raise ValueError("The quadrature rule needs the sphere dimension.")
        self.dim = None if dim is None else int(dim)
        self.rule = rule
        self.nodes = int(nodes)

    def profile(self, t):
        if self.rule == "closed":
            return self._closed_profile(t)
        spline = _tabulated_profile(self.kernel_id, self.dim, self.nodes)
        theta = np.arccos(np.clip(np.asarray(t, dtype=np.float64), -1.0, 1.0))
        return spline(theta)

    def to_dict(self):
        return {"id": self.kernel_id, "dim": self.dim, "rule": self.rule}


class NtkKernel(_ReluExpectationKernel):
    """Two-layer ReLU neural tangent kernel, k(x, y) = E (x.y) s'(w.x) s'(w.y).

    Evaluated with the closed-form rule by default; ``rule="quadrature"``
    integrates the expectation numerically and needs ``dim``.
    """

    kernel_id = "ntk2"

    def _closed_profile(self, t):
        return ntk_profile(t)


class ArcCosineKernel(_ReluExpectationKernel):
    """First-order arc-cosine kernel, k(x, y) = E s(w.x) s(w.y).

    This is the kernel k_pi whose RKHS holds the infinite-width two-layer
    ReLU networks with a fixed uniform first layer.

    Evaluated with the closed-form rule by default; ``rule="quadrature"``
    integrates the expectation numerically.
    """

    kernel_id = "arccos1"

    def __init__(self, dim, rule="closed", nodes=256):
        if dim is None:
            raise ValueError("The arc-cosine kernel needs the sphere dimension.")
        super().__init__(dim, rule, nodes)

    def _closed_profile(self, t):
        return arccos_profile(t, self.dim)
