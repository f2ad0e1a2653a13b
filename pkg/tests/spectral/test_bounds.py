import numpy as np
from pytest import raises
from scipy import special

from fqilab.harness import fit_loglog_slope
from fqilab.spectral import (
    eig_sequence,
    kernel_rate_exponents,
    l2_minimax_rate,
    linf_lower_bound,
    tail_sum,
)


def test_linf_geometric():
    values = 2.0 ** -np.arange(1, 80)
    assert abs(linf_lower_bound(values, 4, tail="none") - 0.25) < 1e-12
    full = np.sqrt(values.sum())
    assert abs(linf_lower_bound(values, 0, tail="none") - full) < 1e-12
    with raises(ValueError):
        linf_lower_bound(values, 100, tail="none")
    with raises(ValueError):
        linf_lower_bound(values, 4, tail="exact")


def test_powerlaw_tail():
    N = 1000
    values = np.arange(1, N + 1, dtype=float) ** -2.0
    expected = special.zeta(2.0, N + 1)
    assert abs(tail_sum(values, N) / expected - 1) < 1e-6
    # Within the sequence, computed terms plus the extrapolated rest
    expected = np.sum(values[500:]) + special.zeta(2.0, N + 1)
    assert abs(tail_sum(values, 500) / expected - 1) < 1e-6
    with raises(ValueError):
        tail_sum(np.arange(1, 100, dtype=float) ** -0.5, 10)
    with raises(ValueError):
        tail_sum(values, -1)


def test_linf_bound_scaling():
    sizes = np.geomspace(100, 1000, 6).astype(int)
    for kernel, expected in (("laplacian", -0.5), ("ntk2", -0.5), ("arccos1", -1.5)):
        seq = eig_sequence(kernel, 3, 4000)
        # The bound is sqrt of an eigenvalue tail sum, so its square decays
        # as n^(1 - alpha); the unsquared slope would be half of expected
        squares = [linf_lower_bound(seq, n) ** 2 for n in sizes]
        slope, _ = fit_loglog_slope(np.column_stack([sizes, squares]))
        assert abs(slope - expected) < 0.2 * abs(expected)


def test_l2_minimax_rate():
    assert abs(l2_minimax_rate(3, 16) - 2**-1.5) < 1e-15
    assert l2_minimax_rate(2.0, 1) == 1.0
    with raises(ValueError):
        l2_minimax_rate(1.0, 16)
    with raises(ValueError):
        l2_minimax_rate(3.0, 0)


def test_kernel_rate_exponents():
    lap = kernel_rate_exponents("lap", 3)
    assert lap == {"decay": -1.5, "alpha": 1.5, "l2": 0.3, "linf": 0.25}
    arc = kernel_rate_exponents("arccos1", 4)
    assert abs(arc["alpha"] - 2.0) < 1e-15 and abs(arc["linf"] - 0.5) < 1e-15
    with raises(ValueError):
        kernel_rate_exponents("lap", 2)
    with raises(ValueError):
        kernel_rate_exponents("delta", 3)
