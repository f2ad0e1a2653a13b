import numpy as np
from pytest import raises

from fqilab.kernels import DeltaKernel, LaplacianKernel, NtkKernel
from fqilab.mdp import make_barron_mdp, make_rkhs_mdp, relu_mean
from fqilab.utils import stream_rng, uniform_sphere


def _queries(mdp, n=200, seed=0):
    rng = stream_rng(seed)
    states = uniform_sphere(rng, n, mdp.state_dim)
    actions = rng.integers(mdp.action_count, size=n)
    return states, actions


def test_rkhs_mdp_is_valid():
    mdp = make_rkhs_mdp(3, 4, 3, 2, 4, LaplacianKernel(dim=4))
    states, actions = _queries(mdp)
    for h in range(1, 4):
        r = mdp.reward(states, actions, h)
        assert np.all((r >= 0) & (r <= 1))
        w = mdp.weights(states, actions, h)
        assert w.shape == (200, 4)
        assert np.all(w >= 0)
        assert np.allclose(w.sum(axis=1), 1.0)
        nxt = mdp.sample_next(states, actions, h, seed=1)
        assert np.allclose(np.linalg.norm(nxt, axis=1), 1.0)
    meta = mdp.metadata
    assert meta["generator"] == "rkhs"
    assert meta["K_x"] == 1.0
    assert meta["K_r"] > 0 and meta["K_p"] >= 1.0
    assert abs(meta["kappa_bound"] - 4 * meta["K_p"]) < 1e-12


def test_rkhs_mdp_is_deterministic():
    a = make_rkhs_mdp(5, 3, 2, 2, 3, LaplacianKernel(dim=3))
    b = make_rkhs_mdp(5, 3, 2, 2, 3, LaplacianKernel(dim=3))
    states, actions = _queries(a, 20)
    assert np.array_equal(a.reward(states, actions, 1), b.reward(states, actions, 1))
    assert np.array_equal(
        a.sample_next(states, actions, 2, seed=9, block=3),
        b.sample_next(states, actions, 2, seed=9, block=3),
    )
    assert a.metadata == b.metadata


def test_rkhs_mdp_kernel_checks():
    with raises(ValueError):
        make_rkhs_mdp(0, 3, 2, 2, 3, NtkKernel())
    with raises(TypeError):
        make_rkhs_mdp(0, 3, 2, 2, 3, DeltaKernel())
    with raises(ValueError):
        make_rkhs_mdp(0, 3, 2, 2, 1, LaplacianKernel())


def test_zero_coupling_gives_fixed_weights():
    mdp = make_rkhs_mdp(2, 3, 2, 2, 3, LaplacianKernel(dim=3), coupling=0.0)
    states, actions = _queries(mdp, 50)
    w = mdp.weights(states, actions, 1)
    assert np.allclose(w, w[0])


def test_barron_mdp_is_valid():
    mdp = make_barron_mdp(1, 5, 2, 3, 3)
    states, actions = _queries(mdp)
    for h in (1, 2):
        r = mdp.reward(states, actions, h)
        assert np.all((r >= 0) & (r <= 1))
        assert np.all(mdp.weights(states, actions, h) >= 0)
    meta = mdp.metadata
    assert meta["generator"] == "barron"
    assert meta["B_r"] <= 1.0
    assert abs(meta["kappa_bound"] - 9 * meta["B_p"]) < 1e-12


def test_relu_mean():
    # On S^2 the first coordinate is uniform on [-1, 1]
    assert abs(relu_mean(3) - 0.25) < 1e-12
    w = uniform_sphere(np.random.default_rng(1), 2**18, 6)
    assert abs(relu_mean(6) - np.mean(np.maximum(w[:, 0], 0))) < 2e-3


def test_reference_samples_match_mixture():
    mdp = make_rkhs_mdp(4, 3, 2, 1, 3, LaplacianKernel(dim=3), coupling=0.0)
    rng = stream_rng(0)
    ref = mdp.sample_reference(rng, 20000)
    assert ref.shape == (20000, 3)
    assert np.allclose(np.linalg.norm(ref, axis=1), 1.0)
