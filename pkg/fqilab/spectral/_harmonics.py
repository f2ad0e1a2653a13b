"""Spherical harmonic bookkeeping on S^{d-1}.

Degree-l harmonics span a space of dimension N(d, l). Their reproducing
kernel is N(d, l) P_l(x . y) under the normalized surface measure, where
P_l is the Gegenbauer polynomial of index (d - 2) / 2 scaled so that
P_l(1) = 1.
"""

import functools
import math

import numpy as np
from scipy import special


def harmonic_dim(d, l):
    """The number N(d, l) of linearly independent degree-l harmonics on S^{d-1}.

    Exact integer arithmetic, so large degrees do not overflow.
    """
    d, l = int(d), int(l)
    if d < 2:
        raise ValueError(f"Sphere dimension must be at least 2, got {d}.")
    if l < 0:
        raise ValueError(f"Degree must be non-negative, got {l}.")
    if l == 0:
        return 1
    if d == 2:
        return 2
    # (2l + d - 2) (l + d - 3)! / ((d - 2)! l!)
    return (2 * l + d - 2) * math.comb(l + d - 3, l) // (d - 2)


def gegenbauer_table(d, degree, t):
    """Evaluate P_0, ..., P_degree at the points t; returns shape (degree + 1, len(t)).

    Uses the three-term recurrence
    P_{l+1} = ((2l + d - 2) t P_l - l P_{l-1}) / (l + d - 2).
    """
    if d < 2:
        raise ValueError(f"Sphere dimension must be at least 2, got {d}.")
    if degree < 0:
        raise ValueError(f"Degree must be non-negative, got {degree}.")
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))
    table = np.empty((degree + 1, len(t)))
    table[0] = 1.0
    if degree >= 1:
        table[1] = t
    for l in range(1, degree):
        table[l + 1] = ((2 * l + d - 2) * t * table[l] - l * table[l - 1]) / (l + d - 2)
    return table


def gegenbauer_poly(d, l, t):
    """The degree-l zonal polynomial P_l on S^{d-1}, normalized to P_l(1) = 1."""
    t = np.asarray(t, dtype=np.float64)
    if np.any(np.abs(t) > 1 + 1e-12):
        raise ValueError("Gegenbauer polynomials are evaluated on [-1, 1].")
    values = gegenbauer_table(d, int(l), t.ravel())[-1]
    return values.reshape(t.shape) if t.ndim else float(values[0])


@functools.lru_cache(maxsize=32)
def sphere_quadrature(d, nodes=2048):
    """Nodes t and weights for integrals against (1 - t^2)^((d - 3) / 2) dt.

    The rule is Gauss-Legendre in the angle, t = cos(theta), with weight
    sin(theta)^(d - 2). The zonal kernel profiles used here are smooth in
    theta even where they have a kink in t at t = 1. Weights are
    normalized to sum to one, i.e. they integrate against the law of
    x . y for x uniform on the sphere.
    """
    if d < 2:
        raise ValueError(f"Sphere dimension must be at least 2, got {d}.")
    z, wz = special.roots_legendre(int(nodes))
    theta = 0.5 * np.pi * (z + 1.0)
    weights = wz * np.sin(theta) ** (d - 2)
    weights = weights / weights.sum()
    t = np.cos(theta)
    t.flags.writeable = False
    weights.flags.writeable = False
    return t, weights
