import pandas as pd
from pytest import raises

from fqilab.harness import main, read_results
from fqilab.utils import dump_yaml, load_yaml


ENV = "finite:s5a2h3:seed1"


def test_spectral_bound_l2(capsys):
    assert main(["spectral", "bound", "--mode", "l2", "--kernel", "lap", "--n", "100", "400"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "n,bound"
    assert [line.split(",")[0] for line in lines[1:]] == ["100", "400"]
    b100, b400 = (float(line.split(",")[1]) for line in lines[1:])
    assert abs(b400 / b100 - 4**-0.3) < 1e-12


def test_spectral_eigs(tmp_path):
    out = tmp_path / "eigs.csv"
    assert main(["spectral", "eigs", "--kernel", "ntk", "--dim", "3", "--count", "50", "--out", str(out)]) == 0
    frame = pd.read_csv(out)
    assert len(frame) == 50
    assert list(frame.columns) == ["index", "degree", "eigenvalue", "multiplicity"]
    assert (frame["eigenvalue"].diff().dropna() <= 0).all()


def test_fqi_run(tmp_path):
    config = tmp_path / "run.yaml"
    dump_yaml({"env": ENV, "n": 200, "lambda": 0.05}, str(config))
    assert main(["fqi", "run", "--config", str(config), "--out", str(tmp_path / "out")]) == 0
    record = load_yaml(str(tmp_path / "out" / "run.yaml"))
    assert record["lambda"] == 0.05
    assert record["simulator_calls"] == 600
    assert [s["h"] for s in record["steps"]] == [1, 2, 3]
    ev = record["evaluation"]
    assert ev["gap"] >= -1e-12 and abs(ev["optimal"] - ev["return"] - ev["gap"]) < 1e-12


def test_rates(tmp_path, capsys):
    config = tmp_path / "rates.yaml"
    dump_yaml({"env": ENV, "sizes": [20, 100], "seeds": [0, 1], "lambda": 0.05}, str(config))
    assert main(["rates", "--config", str(config), "--out", str(tmp_path / "out")]) == 0
    assert "slope" in capsys.readouterr().out
    rows, aggregate, metadata = read_results(str(tmp_path / "out"))
    assert len(rows) == 4 and list(aggregate["n"]) == [20, 100]
    assert metadata["concentration"]["exact"]


def test_assumptions(tmp_path, capsys):
    config = tmp_path / "assumptions.yaml"
    dump_yaml({"envs": [ENV], "dim": 3, "n": 16, "trials": 5, "instances": 1}, str(config))
    assert main(["assumptions", "--config", str(config), "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "kernel: 1/1" in out and "path-norm: 1/1" in out
    assert (tmp_path / "concentration.csv").is_file()


def test_barron_width(capsys):
    assert main(["barron-width", "--dim", "4", "--widths", "8", "32", "128"]) == 0
    captured = capsys.readouterr()
    assert captured.out.splitlines()[0] == "width,l2_error"
    assert "# slope:" in captured.err


def test_errors(tmp_path, capsys):
    assert main(["rates", "--config", str(tmp_path / "missing.yaml")]) == 2
    assert "fqilab: error" in capsys.readouterr().err
    bad = tmp_path / "bad.yaml"
    dump_yaml({"env": ENV, "sizes": [20], "ridge": 1}, str(bad))
    assert main(["rates", "--config", str(bad)]) == 2
    with raises(SystemExit):
        main(["spectral", "bound", "--mode", "sup"])
