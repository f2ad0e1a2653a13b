import numpy as np

from ..utils import as_points, check_unit_norm


class Kernel:
    """Base class for positive definite kernels on the state space.

    Subclasses implement ``_cross()``, which receives validated point
    arrays. The public entry points are ``cross()`` for a matrix of
    values, and calling the kernel on two single points.
    """

    kernel_id = None
    on_sphere = False

    @property
    def bound(self):
        """The constant K_x = sup_x k(x, x)."""
        raise NotImplementedError()

    def __call__(self, x, y):
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        if x.ndim != 1 or y.ndim != 1:
            raise ValueError("Kernel call expects two single points.")
        return float(self.cross(x[None], y[None])[0, 0])

    def cross(self, xs, ys):
        """Matrix of values k(xs[i], ys[j])."""
        xs = as_points(xs)
        ys = as_points(ys, xs.shape[1])
        if self.on_sphere:
            check_unit_norm(xs)
            check_unit_norm(ys)
        return self._cross(xs, ys)

    def _cross(self, xs, ys):
        raise NotImplementedError()

    def to_dict(self):
        """Parameters needed to rebuild this kernel with ``make_kernel``."""
        return {"id": self.kernel_id}

    def __repr__(self):
        params = ", ".join(f"{k}={v!r}" for k, v in self.to_dict().items() if k != "id")
        return f"<{self.__class__.__name__} {params}>"


class ZonalKernel(Kernel):
    """A dot-product kernel on the unit sphere, k(x, y) = profile(x . y)."""

    on_sphere = True

    def profile(self, t):
        """The kernel as a function of t = x . y in [-1, 1]."""
        raise NotImplementedError()

    @property
    def bound(self):
        return float(self.profile(np.array([1.0]))[0])

    @property
    def sphere_range(self):
        """Lower and upper bound of k(x, y) over pairs of sphere points."""
        t = np.linspace(-1.0, 1.0, 4001)
        values = self.profile(t)
        return float(values.min()), float(values.max())

    def _cross(self, xs, ys):
        dim = getattr(self, "dim", None)
        if dim is not None and xs.shape[1] != dim:
            raise ValueError(f"Kernel is defined on S^{dim - 1}, got {xs.shape[1]}-D points.")
        t = np.clip(xs @ ys.T, -1.0, 1.0)
        return self.profile(t)


def eval_kernel(kernel, x, y):
    """Evaluate ``kernel`` at a single pair of points."""
    return kernel(x, y)


def gram(kernel, points):
    """Gram matrix G_ij = k(x_i, x_j), symmetrized against round-off."""
    points = as_points(points)
    if len(points) == 0:
        raise ValueError("Gram matrix needs at least one point.")
    g = kernel.cross(points, points)
    return 0.5 * (g + g.T)


def rkhs_norm(coeffs, gram):
    """Norm of f = sum_i b_i k(x_i, .), i.e. sqrt(b^T G b)."""
    coeffs = np.asarray(coeffs, dtype=np.float64).ravel()
    gram = np.asarray(gram, dtype=np.float64)
    if gram.shape != (len(coeffs), len(coeffs)):
        raise ValueError(
            f"Coefficients of length {len(coeffs)} do not match Gram of shape {gram.shape}."
        )
    return float(np.sqrt(max(float(coeffs @ gram @ coeffs), 0.0)))
