"""
Utility functions for fqilab.

.. autosummary::
    :toctree: utils/
    :template: ../_templates/custom_layout.rst

    logger
    stream_rng
    uniform_sphere
    as_points
    check_unit_norm
    get_data_dir
    dump_yaml
    load_yaml
    git_blob_hash

"""

import os
import logging

import numpy as np

from ._rng import (  # noqa: F401
    stream_rng,
    STREAM_TRANSITION,
    STREAM_INITIAL,
    STREAM_ACTION,
    STREAM_PLAN,
    STREAM_INIT,
    STREAM_ROLLOUT,
    STREAM_ENV,
    STREAM_RADEMACHER,
)
from ._dirs import get_data_dir  # noqa: F401
from ._serialize import dump_yaml, load_yaml, git_blob_hash  # noqa: F401

logger = logging.getLogger("fqilab")


def _set_log_level():
    # Set default level
    logger.setLevel(logging.WARN)
    # Set user-specified level
    level = os.getenv("FQILAB_LOG_LEVEL", "")
    if level:
        try:
            if level.isnumeric():
                logger.setLevel(int(level))
            else:
                logger.setLevel(level.upper())
        except Exception:
            logger.warning(f"Invalid fqilab log level: {level}")


_set_log_level()


def as_points(points, dim=None):
    """Convert input to a float64 array of shape (n, d).

    A single point (1D array) becomes a batch of one.
    """
    points = np.asarray(points, dtype=np.float64)
    if points.ndim == 1:
        points = points[None, :]
    if points.ndim != 2:
        raise ValueError(f"Expected points of shape (n, d), got {points.shape}.")
    if dim is not None and points.shape[1] != dim:
        raise ValueError(f"Expected points of dimension {dim}, got {points.shape[1]}.")
    return points


def check_unit_norm(points, tol=1e-8):
    """Raise ValueError unless every row of ``points`` has unit norm."""
    norms = np.linalg.norm(points, axis=1)
    bad = np.abs(norms - 1.0) > tol
    if np.any(bad):
        worst = norms[bad][np.argmax(np.abs(norms[bad] - 1.0))]
        raise ValueError(
            f"Sphere kernels need unit-norm inputs, found a point with norm {worst!r}."
        )


def normalize_rows(x):
    """Scale rows to unit norm; zero rows are left at zero."""
    norms = np.linalg.norm(x, axis=-1, keepdims=True)
    safe = np.where(norms > 0, norms, 1.0)
    return x / safe


def uniform_sphere(rng, n, dim):
    """Draw ``n`` points uniformly from the unit sphere in R^dim."""
    x = rng.standard_normal((n, dim))
    x = normalize_rows(x)
    # A zero row has probability zero, but keep the support honest
    zero = np.linalg.norm(x, axis=1) == 0
    if np.any(zero):
        x[zero, 0] = 1.0
    return x
