"""
Batch reinforcement learning lab: regularized fitted Q-iteration with kernel
and two-layer network function classes, certified test MDPs, and numerical
checks of the associated error bounds and kernel spectra.
"""

# flake8: noqa

from . import utils

from .mdp import *
from .kernels import *
from .networks import *
from .fqi import *
from .spectral import *
from .harness import *

from .utils import logger

__version__ = "0.3.0"
version_info = tuple(map(int, __version__.split(".")))

__numpy_version_range__ = "1.22.0", "3.0.0"
__scipy_version_range__ = "1.9.0", "2.0.0"


def _check_lib_version(libname, pipname, version_range):
    import importlib  # noqa

    lib = importlib.import_module(libname)

    min_ver, max_ver = version_range
    min_ver_info = tuple(map(int, min_ver.split(".")))
    max_ver_info = tuple(map(int, max_ver.split(".")))
    # Release candidates and dev builds carry non-numeric suffixes
    lib_ver_info = tuple(
        int("".join(c for c in part if c.isdigit()) or 0)
        for part in lib.__version__.split(".")[:3]
    )
    detected = f"Detected {lib.__version__}, need >={min_ver}, <{max_ver}."
    if lib_ver_info < min_ver_info:
        logger.error(
            f"Incompatible version of {libname}:\n    {detected}\n    To update, use e.g. `pip install -U {pipname}`."
        )
    elif lib_ver_info >= max_ver_info:
        logger.warning(f"Possible incompatible version of {libname}:\n    {detected}")


_check_lib_version("numpy", "numpy", __numpy_version_range__)
_check_lib_version("scipy", "scipy", __scipy_version_range__)
