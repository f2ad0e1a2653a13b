"""String specs for the environment generators.

    finite:s20a3h4:seed7
    rkhs:d8a2h4j5:seed3[:laplacian]
    barron:d8a2h4j5:seed3
"""

import re

from ..kernels import make_kernel
from ._finite import make_finite_feature_mdp
from ._mixture import make_rkhs_mdp, make_barron_mdp


_SHAPES = {
    "finite": re.compile(r"^s(\d+)a(\d+)h(\d+)$"),
    "rkhs": re.compile(r"^d(\d+)a(\d+)h(\d+)j(\d+)$"),
    "barron": re.compile(r"^d(\d+)a(\d+)h(\d+)j(\d+)$"),
}
_SEED = re.compile(r"^seed(\d+)$")


def parse_env_spec(spec):
    """Parse an env spec string into a dict of generator arguments."""
    parts = str(spec).strip().split(":")
    kind = parts[0]
    if kind not in _SHAPES or len(parts) not in (3, 4):
        raise ValueError(
            f"Invalid env spec {spec!r}; expected e.g. 'finite:s20a3h4:seed7' "
            "or 'rkhs:d8a2h4j5:seed3'."
        )
    shape = _SHAPES[kind].match(parts[1])
    seed = _SEED.match(parts[2])
    if shape is None or seed is None:
        raise ValueError(f"Invalid env spec {spec!r}.")
    if len(parts) == 4 and kind != "rkhs":
        raise ValueError(f"Only rkhs env specs take a kernel, got {spec!r}.")
    nums = [int(x) for x in shape.groups()]
    out = {"kind": kind, "seed": int(seed.group(1))}
    if kind == "finite":
        out.update(states=nums[0], actions=nums[1], horizon=nums[2])
    else:
        out.update(dim=nums[0], actions=nums[1], horizon=nums[2], mixture_size=nums[3])
    if kind == "rkhs":
        out["kernel"] = parts[3] if len(parts) == 4 else "laplacian"
    return out


def make_env(spec):
    """Create the environment described by an env spec string."""
    p = parse_env_spec(spec)
    if p["kind"] == "finite":
        return make_finite_feature_mdp(p["seed"], p["states"], p["actions"], p["horizon"])
    elif p["kind"] == "rkhs":
        kernel = make_kernel(p["kernel"], dim=p["dim"])
        return make_rkhs_mdp(
            p["seed"], p["dim"], p["horizon"], p["actions"], p["mixture_size"], kernel
        )
    else:
        return make_barron_mdp(p["seed"], p["dim"], p["horizon"], p["actions"], p["mixture_size"])
