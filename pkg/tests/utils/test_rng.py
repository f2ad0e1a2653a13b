import numpy as np
from pytest import raises

from fqilab.utils import stream_rng, uniform_sphere, STREAM_PLAN, STREAM_TRANSITION


def test_stream_rng_reproducible():
    a = stream_rng(5, 2, 3, STREAM_PLAN).random(10)
    b = stream_rng(5, 2, 3, STREAM_PLAN).random(10)
    assert np.array_equal(a, b)


def test_stream_rng_counter_fields_are_independent():
    base = stream_rng(5, 0, 1, STREAM_PLAN).random(4)
    for other in (
        stream_rng(6, 0, 1, STREAM_PLAN),
        stream_rng(5, 1, 1, STREAM_PLAN),
        stream_rng(5, 0, 2, STREAM_PLAN),
        stream_rng(5, 0, 1, STREAM_TRANSITION),
    ):
        assert not np.array_equal(base, other.random(4))


def test_stream_rng_rejects_negative_seed():
    with raises(ValueError):
        stream_rng(-1)


def test_uniform_sphere():
    x = uniform_sphere(stream_rng(0), 500, 4)
    assert x.shape == (500, 4)
    assert np.allclose(np.linalg.norm(x, axis=1), 1.0)
    # Symmetric law, so the mean is near zero
    assert np.all(np.abs(x.mean(axis=0)) < 0.15)
