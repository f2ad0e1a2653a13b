import dataclasses
import functools

import numpy as np
import pandas as pd

from ..kernels import ZonalKernel, canonical_kernel_id, make_kernel
from ..utils import logger
from ._harmonics import gegenbauer_table, harmonic_dim, sphere_quadrature


QUADRATURE_NODES = 2048
QUADRATURE_TOLERANCE = 1e-9
NEGATIVE_FLOOR = -1e-10

# Kernels whose odd-degree eigenvalues vanish beyond degree 1
_EVEN_KERNELS = ("ntk2", "arccos1")


def _zonal_kernel(kernel, d):
    if isinstance(kernel, ZonalKernel):
        if getattr(kernel, "dim", None) not in (None, d):
            raise ValueError(f"Kernel is for dimension {kernel.dim}, not {d}.")
        return kernel
    key = canonical_kernel_id(kernel)
    kernel = make_kernel(key, dim=d)
    if not isinstance(kernel, ZonalKernel):
        raise TypeError(f"Kernel {key!r} is not a dot-product kernel on the sphere.")
    return kernel


def _project(profile, d, degree, nodes):
    t, w = sphere_quadrature(d, nodes)
    return gegenbauer_table(d, degree, t) @ (w * profile(t))


@functools.lru_cache(maxsize=64)
def _cached_eigenvalues(kernel_id, d, degree, nodes):
    kernel = make_kernel(kernel_id, dim=d)
    return _eigenvalues(kernel, d, degree, nodes)


def _eigenvalues(kernel, d, degree, nodes):
    mu = _project(kernel.profile, d, degree, nodes)
    coarse = _project(kernel.profile, d, degree, nodes // 2)
    error = float(np.max(np.abs(mu - coarse)))
    if error > QUADRATURE_TOLERANCE:
        logger.warning(
            f"Eigenvalues of {kernel.kernel_id} (d={d}, degrees <= {degree}): "
            f"quadrature error estimate {error:.3g} exceeds {QUADRATURE_TOLERANCE:g}."
        )
    low = mu.min()
    if low < NEGATIVE_FLOOR:
        logger.warning(f"Eigenvalue {low:.3g} of {kernel.kernel_id} (d={d}) is negative.")
    mu.flags.writeable = False
    return mu


def kernel_eigenvalues(kernel, d, degree, nodes=QUADRATURE_NODES):
    """Mercer eigenvalues mu_0, ..., mu_degree of a zonal kernel on S^{d-1}.

    By the Funk-Hecke formula mu_l = E[kappa(t) P_l(t)], with t the inner
    product of two independent uniform points and kappa the kernel
    profile. Then k(x, y) = sum_l mu_l N(d, l) P_l(x . y).

    Parameters
    ----------
    kernel : str, int or ZonalKernel
        A sphere kernel, or an id such as "laplacian", "ntk2", "arccos1"
        or 1, 2, 3.
    d : int
        The ambient dimension; the sphere is S^{d-1}.
    degree : int
        The largest degree.
    nodes : int
        Quadrature nodes. The error is estimated against half as many
        nodes, and a warning is logged when the estimate exceeds 1e-9.
    """
    d, degree, nodes = int(d), int(degree), int(nodes)
    if d < 2:
        raise ValueError(f"Sphere dimension must be at least 2, got {d}.")
    if degree < 0:
        raise ValueError(f"Degree must be non-negative, got {degree}.")
    if isinstance(kernel, ZonalKernel):
        return _eigenvalues(_zonal_kernel(kernel, d), d, degree, nodes).copy()
    key = canonical_kernel_id(kernel)
    _zonal_kernel(key, d)
    return _cached_eigenvalues(key, d, degree, nodes).copy()


def kernel_eigenvalue(kernel, d, l, nodes=QUADRATURE_NODES):
    """The Mercer eigenvalue mu_l of degree l."""
    return float(kernel_eigenvalues(kernel, d, l, nodes)[l])


def mercer_reconstruction(kernel, d, degree, t, nodes=QUADRATURE_NODES):
    """Evaluate the truncated expansion sum_{l <= degree} mu_l N(d, l) P_l(t)."""
    mu = kernel_eigenvalues(kernel, d, degree, nodes)
    dims = np.array([float(harmonic_dim(d, l)) for l in range(degree + 1)])
    return (mu * dims) @ gegenbauer_table(d, degree, t)


def mercer_trace(kernel, d, degree, nodes=QUADRATURE_NODES):
    """The partial trace sum_{l <= degree} mu_l N(d, l); tends to kappa(1)."""
    mu = kernel_eigenvalues(kernel, d, degree, nodes)
    dims = np.array([float(harmonic_dim(d, l)) for l in range(degree + 1)])
    return float(mu @ dims)


@dataclasses.dataclass(frozen=True)
class EigSequence:
    """The flattened Mercer spectrum of a sphere kernel.

    Attributes
    ----------
    kernel_id : str
        The kernel.
    dim : int
        The ambient dimension d.
    degrees : ndarray
        The degrees l that were computed (odd degrees above one are left
        out for the ReLU kernels, whose eigenvalues vanish there).
    mu : ndarray
        The per-degree eigenvalues, aligned with ``degrees``.
    values : ndarray
        The first ``count`` eigenvalues, with multiplicity, nonincreasing.
    value_degrees : ndarray
        The degree each entry of ``values`` belongs to.
    """

    kernel_id: str
    dim: int
    degrees: np.ndarray
    mu: np.ndarray
    values: np.ndarray
    value_degrees: np.ndarray

    def __len__(self):
        return len(self.values)

    @property
    def multiplicities(self):
        return np.array([harmonic_dim(self.dim, l) for l in self.degrees], dtype=object)

    def to_frame(self):
        """A table with columns index, degree, eigenvalue, multiplicity (1-based index)."""
        mult = {int(l): harmonic_dim(self.dim, l) for l in self.degrees}
        return pd.DataFrame(
            {
                "index": np.arange(1, len(self.values) + 1),
                "degree": self.value_degrees,
                "eigenvalue": self.values,
                "multiplicity": [mult[int(l)] for l in self.value_degrees],
            }
        )


def _degree_list(kernel_id, top):
    degrees = np.arange(top + 1)
    if kernel_id in _EVEN_KERNELS:
        degrees = degrees[(degrees <= 1) | (degrees % 2 == 0)]
    return degrees


def eig_sequence(kernel, d, count, nodes=QUADRATURE_NODES):
    """The first ``count`` Mercer eigenvalues with multiplicity, sorted nonincreasing.

    Degrees are added until their multiplicities cover ``count`` entries,
    plus a margin of extra degrees so that the sort sees every eigenvalue
    that can enter the first ``count``.
    """
    count = int(count)
    if count < 1:
        raise ValueError(f"Eigenvalue count must be at least 1, got {count}.")
    source = kernel if isinstance(kernel, ZonalKernel) else canonical_kernel_id(kernel)
    kernel_id = _zonal_kernel(kernel, int(d)).kernel_id
    total, top = 0, -1
    while total < count:
        top += 1
        if kernel_id not in _EVEN_KERNELS or top <= 1 or top % 2 == 0:
            total += harmonic_dim(d, top)
    top += max(4, top // 4)
    degrees = _degree_list(kernel_id, top)
    mu_all = kernel_eigenvalues(source, d, top, nodes)
    mu = mu_all[degrees]

    # Only the first `count` entries are needed, so a block never repeats
    # more than `count` times.
    reps = np.array([min(harmonic_dim(d, l), count) for l in degrees])
    flat = np.repeat(mu, reps)
    flat_degrees = np.repeat(degrees, reps)
    order = np.argsort(-flat, kind="stable")[:count]
    return EigSequence(
        kernel_id,
        int(d),
        degrees,
        mu,
        flat[order],
        flat_degrees[order],
    )


def _sequence_values(seq):
    if isinstance(seq, EigSequence):
        return seq.values
    values = np.asarray(seq, dtype=np.float64)
    if values.ndim != 1:
        raise ValueError(f"Expected a 1D eigenvalue sequence, got shape {values.shape}.")
    return values


def decay_exponent(seq, start=1, stop=None):
    """Least-squares slope of log lambda_l against log l, for l in [start, stop].

    Indices are 1-based and inclusive. ``seq`` is an EigSequence or a 1D
    array of eigenvalues.
    """
    values = _sequence_values(seq)
    stop = len(values) if stop is None else int(stop)
    start = int(start)
    if not 1 <= start < stop <= len(values):
        raise ValueError(
            f"Fit range [{start}, {stop}] must lie within [1, {len(values)}] "
            "and hold at least two points."
        )
    y = values[start - 1 : stop]
    if np.any(y <= 0):
        raise ValueError("Decay exponents need positive eigenvalues in the fit range.")
    x = np.arange(start, stop + 1, dtype=np.float64)
    slope, _ = np.polyfit(np.log(x), np.log(y), 1)
    return float(slope)
