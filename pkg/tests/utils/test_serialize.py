import os

import numpy as np
from pytest import raises

from fqilab.utils import dump_yaml, load_yaml, git_blob_hash, get_data_dir, as_points


def test_dump_and_load_yaml(tmp_path):
    data = {"a": np.float64(0.5), "b": np.arange(3), "c": {"d": np.int64(4), "e": np.bool_(True)}}
    path = tmp_path / "x.yaml"
    text = dump_yaml(data, str(path))
    assert text.startswith("a: 0.5")
    loaded = load_yaml(str(path))
    assert loaded == {"a": 0.5, "b": [0, 1, 2], "c": {"d": 4, "e": True}}


def test_load_yaml_errors(tmp_path):
    with raises(OSError):
        load_yaml(str(tmp_path / "missing.yaml"))
    path = tmp_path / "list.yaml"
    path.write_text("- 1\n- 2\n")
    with raises(ValueError):
        load_yaml(str(path))
    empty = tmp_path / "empty.yaml"
    empty.write_text("")
    assert load_yaml(str(empty)) == {}


def test_git_blob_hash():
    # Same as `printf "hello\n" | git hash-object --stdin`
    assert git_blob_hash("hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a"
    assert git_blob_hash(b"") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391"


def test_get_data_dir(data_dir):
    path = get_data_dir("runs")
    assert path == os.path.join(str(data_dir), "runs")
    assert os.path.isdir(path)


def test_as_points():
    assert as_points([1.0, 2.0]).shape == (1, 2)
    assert as_points(np.zeros((3, 2)), 2).shape == (3, 2)
    with raises(ValueError):
        as_points(np.zeros((3, 2)), 3)
    with raises(ValueError):
        as_points(np.zeros((2, 2, 2)))
