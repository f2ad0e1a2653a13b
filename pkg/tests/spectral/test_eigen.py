import numpy as np
from pytest import raises

from fqilab.kernels import LaplacianKernel, NtkKernel, laplacian_profile
from fqilab.spectral import (
    EigSequence,
    decay_exponent,
    eig_sequence,
    kernel_eigenvalue,
    kernel_eigenvalues,
    mercer_reconstruction,
    mercer_trace,
)


def test_ntk_constant_mode():
    # On S^2, E[t arcsin t] = pi / 8 for t uniform on [-1, 1]
    assert abs(kernel_eigenvalue("ntk", 3, 0) - 1 / 16) < 1e-10


def test_odd_eigenvalues_vanish():
    for kernel in ("ntk2", "arccos1"):
        for d in (3, 5):
            mu = kernel_eigenvalues(kernel, d, 21)
            assert abs(mu[1]) > 1e-3
            assert np.abs(mu[3::2]).max() < 1e-9
            assert np.all(mu[::2] > 0)


def test_laplacian_eigenvalues():
    mu = kernel_eigenvalues("laplacian", 3, 50)
    assert np.all(mu > 0)
    assert np.all(np.diff(mu) < 0)
    same = kernel_eigenvalues(LaplacianKernel(dim=3), 3, 50)
    assert np.allclose(mu, same, rtol=0, atol=1e-15)
    with raises(ValueError):
        kernel_eigenvalues(LaplacianKernel(dim=4), 3, 5)
    with raises(ValueError):
        kernel_eigenvalues("laplacian", 1, 5)
    with raises(ValueError):
        kernel_eigenvalues("laplacian", 3, -1)
    with raises(TypeError):
        kernel_eigenvalues("delta", 3, 5)


def test_mercer_trace():
    gaps = [1.0 - mercer_trace("laplacian", 3, L) for L in (100, 200, 400)]
    assert gaps[0] > gaps[1] > gaps[2] > 0
    assert gaps[2] < 5e-3


def test_mercer_reconstruction():
    t = np.linspace(-0.99, 0.99, 41)
    approx = mercer_reconstruction("laplacian", 3, 400, t)
    assert np.abs(approx - laplacian_profile(t)).max() < 1e-3
    inner = t[np.abs(t) <= 0.9]
    ntk = mercer_reconstruction(NtkKernel(), 4, 200, inner)
    assert np.abs(ntk - NtkKernel().profile(inner)).max() < 1e-3


def test_eig_sequence_blocks():
    seq = eig_sequence("lap", 3, 100)
    assert isinstance(seq, EigSequence) and len(seq) == 100
    assert seq.kernel_id == "laplacian" and seq.dim == 3
    frame = seq.to_frame()
    assert list(frame.columns) == ["index", "degree", "eigenvalue", "multiplicity"]
    counts = frame.groupby("degree").size()
    assert list(counts.index) == list(range(10))
    assert all(counts[l] == 2 * l + 1 for l in range(10))
    assert np.all(np.diff(seq.values) <= 0)


def test_eig_sequence_even_kernels():
    seq = eig_sequence("arccos", 3, 500)
    assert np.all(np.diff(seq.values) <= 0)
    assert np.all(seq.values > 0)
    odd = seq.value_degrees[(seq.value_degrees % 2 == 1)]
    assert set(odd) <= {1}
    with raises(ValueError):
        eig_sequence("lap", 3, 0)


def test_decay_exponent_exact():
    values = np.arange(1, 101, dtype=float) ** -2.0
    assert abs(decay_exponent(values) + 2.0) < 1e-12
    assert abs(decay_exponent(values, 10, 50) + 2.0) < 1e-12
    with raises(ValueError):
        decay_exponent(values, 0, 10)
    with raises(ValueError):
        decay_exponent(values, 5, 5)
    with raises(ValueError):
        decay_exponent(values, 1, 101)
    with raises(ValueError):
        decay_exponent(np.array([1.0, 0.0, 0.5]))


def test_decay_exponents_of_sphere_kernels():
    for kernel, expected in (("laplacian", -1.5), ("ntk2", -1.5), ("arccos1", -2.5)):
        seq = eig_sequence(kernel, 3, 2000)
        slope = decay_exponent(seq, 100, 2000)
        assert abs(slope - expected) < 0.1 * abs(expected)
