import os

from pytest import raises

from fqilab.fqi import KernelBackend, NetworkBackend
from fqilab.harness import (
    AssumptionConfig,
    BackendConfig,
    ExperimentConfig,
    RunConfig,
    load_config,
    resolve_output,
)


ENV = "finite:s5a2h3:seed1"


def test_run_config():
    config = RunConfig.from_dict({"env": ENV, "lambda": 0.1, "n": "64"})
    assert config.lam == 0.1 and config.n == 64
    assert config.plan == "default" and config.backend.kernel == "delta"
    d = config.to_dict()
    assert d["lambda"] == 0.1 and "lam" not in d
    assert d["backend"] == {"kind": "kernel", "kernel": "delta", "params": {}}
    assert RunConfig.from_dict(d).to_dict() == d
    assert d["lam_scale"] == 2.0
    assert RunConfig.from_dict({"env": ENV, "lam_scale": "0.01"}).lam_scale == 0.01


def test_run_config_validation():
    with raises(ValueError):
        RunConfig.from_dict({"env": ENV, "sizes": [1]})
    with raises(ValueError):
        RunConfig.from_dict({"env": "finite:s5:seed1"})
    with raises(ValueError):
        RunConfig(ENV, lam="fast")
    with raises(ValueError):
        RunConfig(ENV, lam=0.0)
    with raises(ValueError):
        RunConfig(ENV, n=0)
    with raises(ValueError):
        RunConfig(ENV, plan="optimal")
    with raises(ValueError):
        RunConfig.from_dict([ENV])


def test_backend_config():
    kernel = BackendConfig.from_value({"kernel": "lap"})
    assert kernel.kind == "kernel"
    backend = kernel.build(0.5, dim=3)
    assert isinstance(backend, KernelBackend) and backend.lam == 0.5
    assert kernel.build(lam_scale=0.01).lam_scale == 0.01
    assert backend.kernel.dim == 3
    network = BackendConfig.from_value({"kind": "network", "width": 8, "epochs": 2})
    assert network.to_dict() == {"kind": "network", "width": 8, "epochs": 2}
    assert isinstance(network.build(), NetworkBackend)
    with raises(ValueError):
        BackendConfig(kind="forest")
    with raises(ValueError):
        BackendConfig.from_value({"kernel": "lap", "ridge": 1e-3})
    with raises(ValueError):
        BackendConfig.from_value("lap")


def test_experiment_cells():
    config = ExperimentConfig(ENV, [10, 20], seeds=[0, 3], master_seed=5)
    assert config.cells() == [(0, 10, 0), (1, 20, 0), (6, 10, 3), (7, 20, 3)]
    assert config.cell_seed(6) == 3
    assert config.cell_seed(0) == 5
    assert config.make_env().state_count == 5


def test_experiment_validation():
    for kwargs in (
        {"sizes": []},
        {"sizes": [20, 10]},
        {"sizes": [10, 10]},
        {"sizes": [0, 10]},
        {"sizes": [10], "seeds": [1, 1]},
        {"sizes": [10], "seeds": [-1]},
        {"sizes": [10], "seeds": []},
        {"sizes": [10], "workers": 0},
        {"sizes": [10], "plan": "optimal"},
        {"sizes": [10], "reference_n": 0},
        {"sizes": [10], "lam": -1},
        {"sizes": [10], "lam_scale": 0},
        {"sizes": [10], "lam_scale": "wide"},
    ):
        with raises(ValueError):
            ExperimentConfig(ENV, **kwargs)


def test_assumption_config():
    config = AssumptionConfig.from_dict({"envs": [ENV], "n": 32})
    assert config.n == 32 and config.kernel == "laplacian"
    with raises(ValueError):
        AssumptionConfig(envs=["rkhs:d3a2h2j3:seed0"])
    with raises(ValueError):
        AssumptionConfig(trials=0)
    with raises(ValueError):
        AssumptionConfig(radius=-1.0)


def test_load_config(tmp_path):
    path = tmp_path / "rates.yaml"
    path.write_text(
        "env: finite:s5a2h3:seed1\n"
        "sizes: [16, 64]\n"
        "seeds: [0, 1]\n"
        "lambda: 0.05\n"
        "backend: {kind: kernel, kernel: delta}\n"
    )
    config = load_config(str(path))
    assert isinstance(config, ExperimentConfig)
    assert config.lam == 0.05 and config.sizes == [16, 64]
    run = tmp_path / "run.yaml"
    run.write_text("env: finite:s5a2h3:seed1\nn: 32\n")
    assert load_config(str(run), RunConfig).n == 32
    with raises(OSError):
        load_config(str(tmp_path / "missing.yaml"))


def test_resolve_output(tmp_path, data_dir):
    out = resolve_output(str(tmp_path / "a" / "b"), "rates")
    assert os.path.isdir(out)
    assert resolve_output(None, "rates") == os.path.join(str(data_dir), "rates")


def test_shipped_configs_load():
    root = os.path.join(os.path.dirname(__file__), "..", "..", "configs")
    kinds = {
        "finite_rates.yaml": ExperimentConfig,
        "rkhs_rates.yaml": ExperimentConfig,
        "network_rates.yaml": ExperimentConfig,
        "assumptions.yaml": AssumptionConfig,
        "fqi_run.yaml": RunConfig,
    }
    for name, cls in kinds.items():
        config = load_config(os.path.join(root, name), cls)
        assert isinstance(config, cls)
    finite = load_config(os.path.join(root, "finite_rates.yaml"))
    assert finite.lam == "auto" and finite.lam_scale == 0.01
    rkhs = load_config(os.path.join(root, "rkhs_rates.yaml"))
    assert rkhs.make_env().state_dim == 4
    assert rkhs.backend.build(0.1, 4).kernel.kernel_id == "laplacian"
