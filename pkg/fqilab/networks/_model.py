import numpy as np

from ..utils import as_points, stream_rng, uniform_sphere, STREAM_INIT


def relu(x):
    return np.maximum(x, 0.0)


class TwoLayerQ:
    """Two-layer ReLU network with one output per action and no biases.

    f(x, a) = (1/m) sum_i b_{i,a} relu(w_{i,a} . x)

    Parameters
    ----------
    outer : ndarray
        Outer weights b, shape (|A|, m).
    inner : ndarray
        Inner weights w, shape (|A|, m, d).
    info : dict
        Training diagnostics.
    """

    backend = "network"

    def __init__(self, outer, inner, info=None):
        outer = np.asarray(outer, dtype=np.float64)
        inner = np.asarray(inner, dtype=np.float64)
        if outer.ndim != 2 or inner.ndim != 3 or inner.shape[:2] != outer.shape:
            raise ValueError(
                f"Expected outer (A, m) and inner (A, m, d), got {outer.shape} and {inner.shape}."
            )
        self._outer = outer
        self._inner = inner
        self.info = dict(info or {})

    @classmethod
    def initial(cls, action_count, width, dim, seed=0):
        """Directions uniform on the sphere, zero outer weights."""
        rng = stream_rng(seed, 0, 0, STREAM_INIT)
        inner = uniform_sphere(rng, action_count * width, dim).reshape(action_count, width, dim)
        return cls(np.zeros((action_count, width)), inner)

    @property
    def outer(self):
        return self._outer.copy()

    @property
    def inner(self):
        return self._inner.copy()

    @property
    def width(self):
        return self._outer.shape[1]

    @property
    def action_count(self):
        return self._outer.shape[0]

    @property
    def dim(self):
        return self._inner.shape[2]

    @property
    def action_path_norms(self):
        """Per-action path norms (1/m) sum_i |b_i| |w_i|."""
        norms = np.linalg.norm(self._inner, axis=2)
        return np.mean(np.abs(self._outer) * norms, axis=1)

    @property
    def regularizer(self):
        """The penalty value, the path norm max over actions."""
        return float(self.action_path_norms.max())

    def values(self, states):
        """Evaluate all actions, returning an (n, |A|) array."""
        states = as_points(states, self.dim)
        out = np.empty((len(states), self.action_count))
        for a in range(self.action_count):
            out[:, a] = relu(states @ self._inner[a].T) @ self._outer[a] / self.width
        return out

    def predict(self, states, actions):
        """Evaluate f(x_i, a_i) for paired states and actions."""
        states = as_points(states, self.dim)
        actions = np.asarray(actions, dtype=np.int64).ravel()
        if len(actions) != len(states):
            raise ValueError(f"{len(states)} states but {len(actions)} actions.")
        if np.any((actions < 0) | (actions >= self.action_count)):
            raise ValueError(f"Action index out of range for {self.action_count} actions.")
        out = np.zeros(len(states))
        for a in np.unique(actions):
            sel = actions == a
            out[sel] = relu(states[sel] @ self._inner[a].T) @ self._outer[a] / self.width
        return out

    def to_dict(self):
        return {
            "backend": self.backend,
            "width": self.width,
            "outer": self._outer.tolist(),
            "inner": self._inner.tolist(),
            "info": dict(self.info),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(d["outer"], d["inner"], d.get("info"))


def forward(net, x, a):
    """Evaluate a network at a single state and action."""
    return float(net.predict(np.asarray(x, dtype=np.float64)[None], [a])[0])


def path_norm(net):
    """The path norm max_a (1/m) sum_i |b_{i,a}| |w_{i,a}|."""
    return net.regularizer


class BarronTarget:
    """A finite random-feature function with a certified path norm.

    f(x) = (1/m) sum_i b_i relu(w_i . x)
    """

    def __init__(self, outer, inner):
        self._outer = np.asarray(outer, dtype=np.float64).ravel()
        self._inner = as_points(inner)
        if len(self._outer) != len(self._inner):
            raise ValueError("Need one inner weight vector per outer weight.")

    @property
    def outer(self):
        return self._outer.copy()

    @property
    def inner(self):
        return self._inner.copy()

    @property
    def width(self):
        return len(self._outer)

    @property
    def dim(self):
        return self._inner.shape[1]

    @property
    def certified_norm(self):
        return float(np.mean(np.abs(self._outer) * np.linalg.norm(self._inner, axis=1)))

    def __call__(self, states):
        states = as_points(states, self.dim)
        return relu(states @ self._inner.T) @ self._outer / self.width

    def subsample(self, width):
        """The truncation to the first ``width`` neurons."""
        if not 1 <= width <= self.width:
            raise ValueError(f"Width must be in [1, {self.width}], got {width}.")
        return BarronTarget(self._outer[:width], self._inner[:width])

    def as_network(self, action_count=1):
        """The same function as a TwoLayerQ, repeated for every action."""
        outer = np.tile(self._outer, (action_count, 1))
        inner = np.tile(self._inner, (action_count, 1, 1))
        return TwoLayerQ(outer, inner)


def make_barron_target(seed, dim, width, norm_budget):
    """Random ReLU features with path norm exactly ``norm_budget``.

    Directions are uniform on the sphere, outer weights have random signs
    and magnitude ``norm_budget``, so that (1/m) sum |b_i| |w_i| equals the
    budget.
    """
    if norm_budget < 0:
        raise ValueError(f"Norm budget must be non-negative, got {norm_budget}.")
    rng = stream_rng(seed, 0, 0, STREAM_INIT)
    inner = uniform_sphere(rng, width, dim)
    signs = np.where(rng.random(width) < 0.5, -1.0, 1.0)
    return BarronTarget(signs * float(norm_budget), inner)
