import numpy as np
from pytest import raises

from fqilab.networks import (
    TrainConfig,
    TwoLayerQ,
    forward,
    make_barron_target,
    path_norm,
    relu,
    train_regularized,
)
from fqilab.utils import stream_rng, uniform_sphere


def test_forward_single_neuron():
    net = TwoLayerQ([[2.0]], [[[1.0, 0.0, 0.0]]])
    assert forward(net, [1.0, 0.0, 0.0], 0) == 2.0
    assert forward(net, [-1.0, 0.0, 0.0], 0) == 0.0


def test_path_norm():
    net = TwoLayerQ([[2.0, -4.0]], [[[1.0, 0.0], [0.5, 0.0]]])
    assert path_norm(net) == 2.0
    two = TwoLayerQ([[1.0, 0.0], [0.0, 6.0]], np.ones((2, 2, 1)))
    assert np.allclose(two.action_path_norms, [0.5, 3.0])
    assert path_norm(two) == 3.0


def test_rescaling_invariance():
    rng = stream_rng(2)
    outer = rng.standard_normal((2, 8))
    inner = rng.standard_normal((2, 8, 3))
    scale = rng.random((2, 8)) + 0.5
    net = TwoLayerQ(outer, inner)
    scaled = TwoLayerQ(outer / scale, inner * scale[:, :, None])
    x = uniform_sphere(rng, 20, 3)
    assert np.allclose(net.values(x), scaled.values(x), atol=1e-12)
    assert abs(path_norm(net) - path_norm(scaled)) < 1e-12


def test_network_validation():
    with raises(ValueError):
        TwoLayerQ(np.zeros((1, 2)), np.zeros((1, 3, 2)))
    net = TwoLayerQ.initial(2, 4, 3, seed=1)
    assert net.regularizer == 0.0
    assert np.allclose(np.linalg.norm(net.inner, axis=2), 1.0)
    with raises(ValueError):
        net.values(np.zeros((2, 4)))
    with raises(ValueError):
        net.predict(np.eye(3), [0, 1])
    with raises(ValueError):
        net.predict(np.eye(3), [0, 1, 2])


def test_network_dict():
    net = TwoLayerQ.initial(2, 4, 3, seed=1)
    other = TwoLayerQ.from_dict(net.to_dict())
    assert np.array_equal(other.inner, net.inner)
    assert other.width == 4 and other.action_count == 2 and other.dim == 3


def test_barron_target():
    target = make_barron_target(3, 5, 256, 1.5)
    assert abs(target.certified_norm - 1.5) < 1e-12
    x = uniform_sphere(stream_rng(4), 500, 5)
    assert np.abs(target(x)).max() <= 1.5
    net = target.as_network(2)
    assert np.allclose(net.values(x)[:, 1], target(x))
    assert abs(path_norm(net) - 1.5) < 1e-12
    assert target.subsample(10).width == 10
    with raises(ValueError):
        target.subsample(0)
    with raises(ValueError):
        target.subsample(257)
    with raises(ValueError):
        make_barron_target(0, 3, 4, -1.0)
    zero = make_barron_target(0, 5, 4, 0.0)
    assert np.all(zero(x) == 0)


def test_train_config_validation():
    with raises(ValueError):
        TrainConfig(width=0)
    with raises(ValueError):
        TrainConfig(epochs=-1)
    with raises(ValueError):
        TrainConfig(batch=0)
    with raises(ValueError):
        TrainConfig(step_size=0.0)


def _regression(n=128, dim=4, seed=0):
    rng = stream_rng(seed)
    x = uniform_sphere(rng, n, dim)
    w = np.eye(dim)[0]
    y = 2.0 * relu(x @ w)
    return x, y


def test_train_reduces_objective():
    x, y = _regression()
    config = TrainConfig(width=32, epochs=200, batch=32, step_size=0.5, seed=1)
    net = train_regularized(x, np.zeros(len(y)), y, 0.0, 2.0, config, 1)
    assert net.info["objective"] < 0.5 * net.info["initial_objective"]
    assert abs(net.info["initial_objective"] - 0.5 * np.mean(y**2)) < 1e-12


def test_train_large_lambda_stays_small():
    x, y = _regression(64)
    lam = 1e6
    config = TrainConfig(width=16, epochs=20, batch=16, seed=2)
    net = train_regularized(x, np.zeros(64), y, lam, 2.0, config, 1)
    initial = net.info["initial_objective"]
    assert net.info["objective"] <= initial
    assert net.regularizer <= initial / lam + 1e-12


def test_train_is_deterministic():
    x, y = _regression(48)
    config = TrainConfig(width=8, epochs=5, batch=16, seed=3)
    a = train_regularized(x, np.zeros(48), y, 0.01, 2.0, config, 1)
    b = train_regularized(x, np.zeros(48), y, 0.01, 2.0, config, 1)
    assert np.array_equal(a.outer, b.outer)
    assert np.array_equal(a.inner, b.inner)


def test_train_validation():
    x, y = _regression(8)
    config = TrainConfig(width=4, epochs=1)
    with raises(ValueError):
        train_regularized(x, np.zeros(8), y, -1.0, 1.0, config, 1)
    with raises(ValueError):
        train_regularized(x, np.zeros(8), y, 0.1, -1.0, config, 1)
    with raises(ValueError):
        train_regularized(x, np.zeros(7), y, 0.1, 1.0, config, 1)
    with raises(ValueError):
        train_regularized(x, np.ones(8), y, 0.1, 1.0, config, 1)
    empty = train_regularized(np.zeros((0, 4)), [], [], 0.1, 1.0, config, 2)
    assert empty.regularizer == 0.0
