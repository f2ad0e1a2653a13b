import os

import numpy as np
import pandas as pd

from fqilab.harness import ExperimentConfig, RateResult, read_results, run_rate_experiment, write_results
from fqilab.harness._rates import aggregate_rows, empty_rows
from fqilab.utils import git_blob_hash


ENV = "finite:s5a2h3:seed1"
HEADER = "n,seed,gap,slope_step_residual_max,lambda,runtime_s"


def _runner(n, seed, cell_seed):
    if n == 32 and seed == 1:
        raise ValueError("no data")
    return {"gap": 1.0 / (3.0 * n + seed), "slope_step_residual_max": 0.1, "lambda": 1 / 7}


def _result():
    config = ExperimentConfig(ENV, [8, 32, 128], seeds=[0, 1], timing=False)
    return run_rate_experiment(config, runner=_runner)


def test_write_and_read(tmp_path):
    result = _result()
    paths = write_results(result, str(tmp_path / "out"))
    assert [os.path.basename(p) for p in paths] == ["rows.csv", "aggregate.csv", "metadata.yaml"]
    with open(paths[0], "rb") as f:
        content = f.read()
    assert content.decode().splitlines()[0] == HEADER
    rows, aggregate, metadata = read_results(str(tmp_path / "out"))
    pd.testing.assert_frame_equal(rows, result.rows)
    pd.testing.assert_frame_equal(aggregate, result.aggregate)
    assert metadata["rows_hash"] == git_blob_hash(content)
    assert metadata["config"]["sizes"] == [8, 32, 128]
    assert metadata["config"]["lambda"] == "auto"
    assert abs(metadata["slope"] - result.slope) < 1e-15
    assert metadata["failures"] == [{"n": 32, "seed": 1, "error": "ValueError: no data"}]


def test_failed_gap_is_an_empty_field(tmp_path):
    write_results(_result(), str(tmp_path))
    lines = (tmp_path / "rows.csv").read_text().splitlines()
    failed = [line for line in lines if line.startswith("32,1,")]
    assert failed == ["32,1,,,,0.0"]
    rows, _, _ = read_results(str(tmp_path))
    assert np.isnan(rows.loc[(rows["n"] == 32) & (rows["seed"] == 1), "gap"]).all()


def test_reruns_are_byte_identical(tmp_path):
    write_results(_result(), str(tmp_path / "a"))
    write_results(_result(), str(tmp_path / "b"))
    for name in ("rows.csv", "aggregate.csv", "metadata.yaml"):
        a = (tmp_path / "a" / name).read_bytes()
        b = (tmp_path / "b" / name).read_bytes()
        assert a == b


def test_empty_rows(tmp_path):
    config = ExperimentConfig(ENV, [8])
    rows = empty_rows()
    result = RateResult(config, rows, aggregate_rows(rows))
    write_results(result, str(tmp_path))
    assert (tmp_path / "rows.csv").read_text() == HEADER + "\n"
    rows, aggregate, metadata = read_results(str(tmp_path))
    assert len(rows) == 0 and list(rows.columns) == HEADER.split(",")
    assert len(aggregate) == 0
    assert metadata["slope"] is None


def test_aggregate_matches_rows(tmp_path):
    write_results(_result(), str(tmp_path))
    rows, aggregate, _ = read_results(str(tmp_path))
    pd.testing.assert_frame_equal(aggregate_rows(rows), aggregate)
