"""Experiment configuration, read from YAML into validated dataclasses."""

import dataclasses
import os

from ..fqi import DEFAULT_LAM_SCALE, make_backend
from ..mdp import make_env, parse_env_spec
from ..mdp._plans import PLANS
from ..networks import TrainConfig
from ..utils import get_data_dir, load_yaml


PLAN_NAMES = ("default",) + tuple(sorted(PLANS))

# YAML spells the regularization constant "lambda"
_KEY_ALIASES = {"lambda": "lam"}


def _check_lam(lam):
    if lam == "auto":
        return lam
    try:
        lam = float(lam)
    except (TypeError, ValueError):
        raise ValueError(f"lambda must be 'auto' or a number, got {lam!r}.") from None
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}.")
    return lam


def _check_lam_scale(scale):
    try:
        scale = float(scale)
    except (TypeError, ValueError):
        raise ValueError(f"lam_scale must be a number, got {scale!r}.") from None
    if not scale > 0:
        raise ValueError(f"lam_scale must be positive, got {scale}.")
    return scale


def _from_mapping(cls, data, source="config"):
    if not isinstance(data, dict):
        raise ValueError(f"Expected a mapping for {cls.__name__}, got {type(data).__name__}.")
    data = {_KEY_ALIASES.get(k, k): v for k, v in data.items()}
    names = {f.name for f in dataclasses.fields(cls)}
    unknown = sorted(set(data) - names)
    if unknown:
        raise ValueError(f"Unknown keys in {source}: {unknown}.")
    return cls(**data)


def _as_dict(ob):
    d = dataclasses.asdict(ob)
    if "lam" in d:
        d["lambda"] = d.pop("lam")
    return d


@dataclasses.dataclass
class BackendConfig:
    """Which regression backend to use.

    In YAML: ``{kind: kernel, kernel: laplacian, params: {...}}`` or
    ``{kind: network, width: 64, epochs: 2000, ...}``.
    """

    kind: str = "kernel"
    kernel: str = "delta"
    params: dict = dataclasses.field(default_factory=dict)
    train: dict = dataclasses.field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("kernel", "network"):
            raise ValueError(f"Unknown backend kind {self.kind!r}, use 'kernel' or 'network'.")
        self.params = dict(self.params or {})
        self.train = dict(self.train or {})
        if self.kind == "network":
            TrainConfig(**self.train)

    @classmethod
    def from_value(cls, value):
        """Accept a BackendConfig or its YAML mapping."""
        if isinstance(value, cls):
            return value
        if not isinstance(value, dict):
            raise ValueError(f"Expected a backend mapping, got {value!r}.")
        value = dict(value)
        kind = value.pop("kind", "kernel")
        if kind == "network":
            return cls(kind=kind, train=value)
        return _from_mapping(cls, dict(value, kind=kind), "backend")

    def to_dict(self):
        if self.kind == "network":
            return {"kind": "network", **self.train}
        return {"kind": "kernel", "kernel": self.kernel, "params": dict(self.params)}

    def build(self, lam="auto", dim=None, lam_scale=DEFAULT_LAM_SCALE):
        return make_backend(self.to_dict(), lam, dim, lam_scale)


@dataclasses.dataclass
class RunConfig:
    """A single FQI run: ``fqilab fqi run --config <file>``."""

    env: str
    backend: BackendConfig = dataclasses.field(default_factory=BackendConfig)
    n: int = 1024
    lam: object = "auto"
    lam_scale: float = DEFAULT_LAM_SCALE
    seed: int = 0
    plan: str = "default"
    episodes: int = 20000
    output: str = None

    def __post_init__(self):
        parse_env_spec(self.env)
        self.backend = BackendConfig.from_value(self.backend)
        self.lam = _check_lam(self.lam)
        self.lam_scale = _check_lam_scale(self.lam_scale)
        if int(self.n) < 1:
            raise ValueError(f"Sample size must be at least 1, got {self.n}.")
        if int(self.seed) < 0:
            raise ValueError(f"Seed must be non-negative, got {self.seed}.")
        if self.plan not in PLAN_NAMES:
            raise ValueError(f"Unknown plan {self.plan!r}, use one of {PLAN_NAMES}.")
        if int(self.episodes) < 1:
            raise ValueError(f"Need at least one evaluation episode, got {self.episodes}.")
        self.n, self.seed, self.episodes = int(self.n), int(self.seed), int(self.episodes)

    @classmethod
    def from_dict(cls, data):
        return _from_mapping(cls, data, "run config")

    def to_dict(self):
        d = _as_dict(self)
        d["backend"] = self.backend.to_dict()
        return d


@dataclasses.dataclass
class ExperimentConfig:
    """A rate experiment: FQI over a grid of sample sizes and seeds.

    Attributes
    ----------
    env : str
        The env spec, e.g. ``finite:s20a3h4:seed7``.
    backend : BackendConfig
        The regression backend.
    sizes : list of int
        The sample sizes n, strictly increasing.
    seeds : list of int
        Distinct non-negative seeds; the cells are all (n, seed) pairs.
    lam : "auto" or float
        The regularization rule (``lambda`` in YAML).
    lam_scale : float
        The constant c of the "auto" rule c M H / sqrt(n), 2 by default.
    episodes : int
        Rollouts per policy evaluation on non-finite environments.
    plan : str
        The sampling plan name.
    master_seed : int
        Combined with the cell index to seed each cell.
    workers : int
        Number of cells run concurrently.
    timing : bool
        Record wall times. When False the runtime column holds zeros, so
        reruns produce identical files.
    reference_n : int or None
        Sample size of the reference policy on non-finite environments,
        4 times the largest size by default.
    output : str or None
        The result directory.
    """

    env: str
    sizes: list
    seeds: list = dataclasses.field(default_factory=lambda: [0])
    backend: BackendConfig = dataclasses.field(default_factory=BackendConfig)
    lam: object = "auto"
    lam_scale: float = DEFAULT_LAM_SCALE
    episodes: int = 20000
    plan: str = "default"
    master_seed: int = 0
    workers: int = 1
    timing: bool = True
    reference_n: int = None
    output: str = None
    name: str = "rates"

    def __post_init__(self):
        parse_env_spec(self.env)
        self.backend = BackendConfig.from_value(self.backend)
        self.lam = _check_lam(self.lam)
        self.lam_scale = _check_lam_scale(self.lam_scale)
        self.sizes = [int(n) for n in self.sizes]
        self.seeds = [int(s) for s in self.seeds]
        if not self.sizes:
            raise ValueError("The grid of sample sizes must not be empty.")
        if self.sizes[0] < 1 or any(b <= a for a, b in zip(self.sizes, self.sizes[1:])):
            raise ValueError(f"Sample sizes must be positive and strictly increasing, got {self.sizes}.")
        if not self.seeds:
            raise ValueError("Need at least one seed.")
        if len(set(self.seeds)) != len(self.seeds) or min(self.seeds) < 0:
            raise ValueError(f"Seeds must be distinct and non-negative, got {self.seeds}.")
        if self.plan not in PLAN_NAMES:
            raise ValueError(f"Unknown plan {self.plan!r}, use one of {PLAN_NAMES}.")
        if int(self.workers) < 1:
            raise ValueError(f"Workers must be at least 1, got {self.workers}.")
        if int(self.episodes) < 1:
            raise ValueError(f"Need at least one evaluation episode, got {self.episodes}.")
        if int(self.master_seed) < 0:
            raise ValueError(f"Master seed must be non-negative, got {self.master_seed}.")
        if self.reference_n is not None and int(self.reference_n) < 1:
            raise ValueError(f"reference_n must be at least 1, got {self.reference_n}.")
        self.workers, self.episodes = int(self.workers), int(self.episodes)
        self.master_seed = int(self.master_seed)
        self.timing = bool(self.timing)

    @classmethod
    def from_dict(cls, data):
        return _from_mapping(cls, data, "experiment config")

    def to_dict(self):
        d = _as_dict(self)
        d["backend"] = self.backend.to_dict()
        return d

    def cells(self):
        """The (index, n, seed) cells, ordered by seed then n."""
        out = []
        for seed in self.seeds:
            for j, n in enumerate(self.sizes):
                out.append((seed * len(self.sizes) + j, n, seed))
        return out

    def cell_seed(self, index):
        """The seed of one cell: master seed XOR cell index."""
        return self.master_seed ^ int(index)

    def make_env(self):
        return make_env(self.env)

    def output_dir(self):
        return resolve_output(self.output, self.name)


@dataclasses.dataclass
class AssumptionConfig:
    """Checks of the concentration and Rademacher assumptions.

    Concentration coefficients are computed for every finite env in
    ``envs``. Rademacher estimates are drawn for ``instances`` random point
    sets of size ``n`` on the sphere in R^``dim``.
    """

    envs: list = dataclasses.field(default_factory=list)
    plan: str = "uniform"
    kernel: str = "laplacian"
    dim: int = 8
    n: int = 256
    action_count: int = 1
    radius: float = 1.0
    trials: int = 200
    instances: int = 20
    master_seed: int = 0
    output: str = None
    name: str = "assumptions"

    def __post_init__(self):
        self.envs = [str(e) for e in self.envs]
        for env in self.envs:
            if parse_env_spec(env)["kind"] != "finite":
                raise ValueError(f"Concentration checks need finite envs, got {env!r}.")
        if self.plan not in PLAN_NAMES:
            raise ValueError(f"Unknown plan {self.plan!r}, use one of {PLAN_NAMES}.")
        for key in ("dim", "n", "action_count", "trials", "instances"):
            if int(getattr(self, key)) < 1:
                raise ValueError(f"{key} must be at least 1, got {getattr(self, key)}.")
            setattr(self, key, int(getattr(self, key)))
        if self.radius < 0:
            raise ValueError(f"Radius must be non-negative, got {self.radius}.")
        self.radius = float(self.radius)

    @classmethod
    def from_dict(cls, data):
        return _from_mapping(cls, data, "assumption config")

    def to_dict(self):
        return dataclasses.asdict(self)

    def output_dir(self):
        return resolve_output(self.output, self.name)


def resolve_output(output, name):
    """The config's output directory, else a folder in the data dir."""
    if output:
        path = os.path.abspath(os.path.expanduser(output))
        os.makedirs(path, exist_ok=True)
        return path
    return get_data_dir(name)


def load_config(path, cls=ExperimentConfig):
    """Read a YAML file into a config dataclass (ExperimentConfig by default)."""
    return cls.from_dict(load_yaml(path))
