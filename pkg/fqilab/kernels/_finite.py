import numpy as np

from ..utils import as_points
from ._base import Kernel


class DeltaKernel(Kernel):
    """The Kronecker-delta kernel: 1 for identical points, 0 otherwise.

    On one-hot embedded states this is the kernel of the tabular (linear
    MDP) setting; its RKHS norm is the Euclidean norm of the value table.
    """

    kernel_id = "delta"

    @property
    def bound(self):
        return 1.0

    def _cross(self, xs, ys):
        # Compare rows through shared labels instead of an (n, m, d) array
        both = np.concatenate([xs, ys], axis=0)
        _, labels = np.unique(both, axis=0, return_inverse=True)
        labels = labels.ravel()
        lx, ly = labels[: len(xs)], labels[len(xs) :]
        return (lx[:, None] == ly[None, :]).astype(np.float64)


class FeatureKernel(Kernel):
    """Kernel of an explicit linear feature map, k(x, y) = (x M) . (y M).

    Without a matrix the identity map is used, giving the linear kernel.
    """

    kernel_id = "explicit-feature"

    def __init__(self, matrix=None, bound=None):
        self.matrix = None if matrix is None else np.asarray(matrix, dtype=np.float64)
        if self.matrix is not None and self.matrix.ndim != 2:
            raise ValueError("Feature matrix must be 2D.")
        # sup_x k(x, x) depends on the support; caller may provide it
        self._bound = bound

    @property
    def bound(self):
        if self._bound is not None:
            return float(self._bound)
        if self.matrix is None:
            return 1.0  # for unit-norm or one-hot states
        return float(np.linalg.norm(self.matrix, 2) ** 2)

    def features(self, xs):
        xs = as_points(xs)
        return xs if self.matrix is None else xs @ self.matrix

    def _cross(self, xs, ys):
        return self.features(xs) @ self.features(ys).T

    def to_dict(self):
        d = {"id": self.kernel_id}
        if self.matrix is not None:
            d["matrix"] = self.matrix.tolist()
        if self._bound is not None:
            d["bound"] = float(self._bound)
        return d


class AugmentedKernel(Kernel):
    """A kernel plus a constant, k(x, y) + c.

    Its RKHS contains the constants, which is where transition densities
    of the mixture environments live.
    """

    kernel_id = "augmented"

    def __init__(self, base, shift=1.0):
        if shift <= 0:
            raise ValueError(f"Shift must be positive, got {shift}.")
        self.base = base
        self.shift = float(shift)
        self.on_sphere = base.on_sphere

    @property
    def bound(self):
        return self.base.bound + self.shift

    def _cross(self, xs, ys):
        return self.base._cross(xs, ys) + self.shift

    def to_dict(self):
        return {"id": self.kernel_id, "base": self.base.to_dict(), "shift": self.shift}
