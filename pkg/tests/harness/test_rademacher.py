import numpy as np
from pytest import raises

from fqilab.harness import KernelBall, PathNormBall, estimate_rademacher
from fqilab.kernels import DeltaKernel, LaplacianKernel
from fqilab.utils import stream_rng, uniform_sphere


def test_delta_ball_is_exact():
    # With an identity Gram matrix the supremum is r |xi| / n = r / sqrt(n)
    ball = KernelBall(DeltaKernel(), np.eye(16), 2.0)
    est = estimate_rademacher(ball, 50, seed=1)
    assert abs(est.value - 0.5) < 1e-12
    assert est.stderr < 1e-12
    assert abs(est.bound - 0.5) < 1e-12
    assert est.envelope == est.value and est.trials == 50


def test_zero_radius():
    x = uniform_sphere(stream_rng(0), 20, 3)
    assert estimate_rademacher(KernelBall(LaplacianKernel(), x, 0.0), 10).value == 0.0
    assert estimate_rademacher(PathNormBall(x, 0.0), 10).value == 0.0


def test_kernel_ball_within_bound():
    x = uniform_sphere(stream_rng(1), 64, 4)
    actions = np.arange(64) % 2
    ball = KernelBall(LaplacianKernel(), x, 1.0, actions, 2)
    est = estimate_rademacher(ball, 200, seed=2)
    assert 0 < est.value <= est.bound + 3 * est.stderr
    assert abs(est.bound - np.sqrt(2) / 8) < 1e-12


def test_path_norm_ball():
    x = uniform_sphere(stream_rng(2), 64, 4)
    ball = PathNormBall(x, 1.0, np.arange(64) % 2, 2, directions=64, seed=3)
    est = estimate_rademacher(ball, 100, seed=4)
    assert 0 < est.value <= est.envelope + 3 * est.stderr
    assert est.value <= est.bound
    assert abs(est.bound - 2 * np.sqrt(2) / 8) < 1e-12


def test_estimates_are_reproducible():
    x = uniform_sphere(stream_rng(3), 32, 3)
    ball = PathNormBall(x, 1.0, seed=5)
    assert estimate_rademacher(ball, 20, seed=6) == estimate_rademacher(ball, 20, seed=6)


def test_ball_validation():
    x = np.eye(4)
    with raises(ValueError):
        KernelBall(DeltaKernel(), x, -1.0)
    with raises(ValueError):
        KernelBall(DeltaKernel(), x, 1.0, [0, 1])
    with raises(ValueError):
        PathNormBall(x, 1.0, [0, 1, 2, 3], 2)
    with raises(ValueError):
        estimate_rademacher(KernelBall(DeltaKernel(), x, 1.0), 0)
