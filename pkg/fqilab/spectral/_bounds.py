"""Sample complexity lower bounds from kernel spectra."""

import numpy as np

from ..kernels import canonical_kernel_id
from ._eigen import _sequence_values


TAILS = ("powerlaw", "none")


def _powerlaw_fit(values):
    # Fit lambda_l = C l^s over the last decade of the sequence
    N = len(values)
    start = max(1, N // 10)
    if N - start + 1 < 2:
        raise ValueError("Need at least two eigenvalues to fit a tail.")
    x = np.arange(start, N + 1, dtype=np.float64)
    y = values[start - 1 :]
    if np.any(y <= 0):
        raise ValueError("Tail fit needs positive eigenvalues in the last decade.")
    s, log_c = np.polyfit(np.log(x), np.log(y), 1)
    return float(s), float(np.exp(log_c))


def tail_sum(seq, n, tail="powerlaw"):
    """The tail sum of the eigenvalues lambda_{n+1}, lambda_{n+2}, ... (1-based).

    Computed terms are summed exactly. With ``tail="powerlaw"`` the
    missing terms beyond the sequence are estimated by fitting
    lambda_l = C l^s on the last decade and integrating, i.e. adding
    C (N + 1/2)^(s+1) / (-s - 1) for the terms past index N.
    """
    if tail not in TAILS:
        raise ValueError(f"Unknown tail rule {tail!r}, use one of {TAILS}.")
    values = _sequence_values(seq)
    n = int(n)
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}.")
    N = len(values)
    if tail == "none":
        if n > N:
            raise ValueError(
                f"n = {n} is beyond the {N} computed eigenvalues and no tail rule is used."
            )
        return float(np.sum(values[n:]))
    s, c = _powerlaw_fit(values)
    if s >= -1:
        raise ValueError(f"Fitted tail exponent {s:.3g} is not summable (needs s < -1).")
    start = max(n, N) + 0.5
    extra = c * start ** (s + 1) / (-s - 1)
    return float(np.sum(values[n:]) + extra)


def linf_lower_bound(seq, n, tail="powerlaw"):
    """Worst-case L-infinity error after n samples, (sum_{l > n} lambda_l)^(1/2).

    Parameters
    ----------
    seq : EigSequence or ndarray
        The eigenvalues, nonincreasing.
    n : int
        The number of samples.
    tail : str
        "powerlaw" (default) to extrapolate beyond the sequence with a
        fitted power law, or "none" to sum only the computed terms.
    """
    return float(np.sqrt(max(tail_sum(seq, n, tail), 0.0)))


def l2_minimax_rate(alpha, n):
    """The minimax L2 rate n^(-alpha / (2 (alpha + 1))) for eigen-decay l^(-alpha)."""
    alpha = float(alpha)
    if not alpha > 1:
        raise ValueError(f"The decay exponent alpha must exceed 1, got {alpha}.")
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}.")
    return float(np.power(float(n), -alpha / (2.0 * (alpha + 1.0))))


def kernel_rate_exponents(kernel, d):
    """Predicted exponents for a sphere kernel on S^{d-1}.

    Returns a dict with
      - ``decay``: the exponent of lambda_l in l, -d/(d-1) for the Laplace
        and NTK kernels and -(d+2)/(d-1) for the arc-cosine kernel;
      - ``alpha``: minus the decay exponent;
      - ``l2``: the L2 rate exponent alpha / (2 (alpha + 1));
      - ``linf``: the exponent (alpha - 1) / 2 of the L-infinity bound,
        whose square is a tail sum of order n^(1 - alpha).
    """
    d = int(d)
    if d < 3:
        raise ValueError(f"Rate exponents need d >= 3, got {d}.")
    key = canonical_kernel_id(kernel)
    if key in ("laplacian", "ntk2"):
        alpha = d / (d - 1)
    elif key == "arccos1":
        alpha = (d + 2) / (d - 1)
    else:
        raise ValueError(f"No rate exponents for kernel {key!r}.")
    return {
        "decay": -alpha,
        "alpha": alpha,
        "l2": alpha / (2.0 * (alpha + 1.0)),
        "linf": (alpha - 1.0) / 2.0,
    }
