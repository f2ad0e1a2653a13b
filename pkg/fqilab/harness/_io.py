"""Writing and reading experiment results: CSV tables plus a YAML record."""

import os

import numpy as np
import pandas as pd

from ..utils import dump_yaml, git_blob_hash, load_yaml
from ._rates import ROW_COLUMNS, AGGREGATE_COLUMNS


ROWS_FILE = "rows.csv"
AGGREGATE_FILE = "aggregate.csv"
METADATA_FILE = "metadata.yaml"


def _float_or_none(value):
    if value is None:
        return None
    value = float(value)
    return None if np.isnan(value) else value


def _write_csv(frame, path):
    try:
        frame.to_csv(path, index=False, lineterminator="\n")
    except OSError as err:
        raise OSError(f"Could not write {path}: {err}") from err
    with open(path, "rb") as f:
        return f.read()


def write_results(result, directory):
    """Write a RateResult to ``directory``.

    Files: ``rows.csv`` (header ``n,seed,gap,slope_step_residual_max,
    lambda,runtime_s``), ``aggregate.csv`` and ``metadata.yaml`` with the
    config, the fitted slope, per-cell details and content hashes of the
    config and the row file.

    Returns the paths of the three files.
    """
    try:
        os.makedirs(directory, exist_ok=True)
    except OSError as err:
        raise OSError(f"Could not create {directory}: {err}") from err
    rows = result.rows.loc[:, list(ROW_COLUMNS)]
    aggregate = result.aggregate.loc[:, list(AGGREGATE_COLUMNS)]
    rows_path = os.path.join(directory, ROWS_FILE)
    agg_path = os.path.join(directory, AGGREGATE_FILE)
    meta_path = os.path.join(directory, METADATA_FILE)
    rows_bytes = _write_csv(rows, rows_path)
    _write_csv(aggregate, agg_path)

    from .. import __version__

    config = result.config.to_dict() if hasattr(result.config, "to_dict") else result.config
    concentration = None
    if result.concentration is not None:
        concentration = {
            "kappas": result.concentration.kappas,
            "kappa": result.concentration.kappa,
            "exact": result.concentration.exact,
        }
    metadata = {
        "fqilab_version": __version__,
        "config": config,
        "config_hash": git_blob_hash(dump_yaml(config)),
        "rows_hash": git_blob_hash(rows_bytes),
        "slope": _float_or_none(result.slope),
        "intercept": _float_or_none(result.intercept),
        "half_width": _float_or_none(result.half_width),
        "concentration": concentration,
        "failures": [
            {"n": c["n"], "seed": c["seed"], "error": c["error"]} for c in result.failures
        ],
        "cells": result.cells,
    }
    dump_yaml(metadata, meta_path)
    return rows_path, agg_path, meta_path


def _read_csv(path, dtypes):
    try:
        return pd.read_csv(path, float_precision="round_trip", dtype=dtypes)
    except OSError as err:
        raise OSError(f"Could not read {path}: {err}") from err


def read_results(directory):
    """Read the files of ``write_results``; returns (rows, aggregate, metadata)."""
    rows = _read_csv(
        os.path.join(directory, ROWS_FILE),
        {c: ("int64" if c in ("n", "seed") else "float64") for c in ROW_COLUMNS},
    )
    aggregate = _read_csv(
        os.path.join(directory, AGGREGATE_FILE),
        {c: ("int64" if c in ("n", "count") else "float64") for c in AGGREGATE_COLUMNS},
    )
    metadata = load_yaml(os.path.join(directory, METADATA_FILE))
    return rows, aggregate, metadata
