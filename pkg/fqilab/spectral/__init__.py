"""
Mercer spectra of dot-product kernels on the sphere S^{d-1}.

.. currentmodule:: fqilab.spectral

A zonal kernel k(x, y) = kappa(x . y) is diagonalized by spherical
harmonics: the degree-l harmonics form an eigenspace of dimension N(d, l)
with eigenvalue mu_l. The flattened, sorted eigenvalues determine the
sample complexity lower bounds computed here.

.. rubric:: Harmonics
.. autosummary::
    :toctree: spectral/
    :template: ../_templates/custom_layout.rst

    harmonic_dim
    gegenbauer_poly
    gegenbauer_table
    sphere_quadrature

.. rubric:: Eigenvalues
.. autosummary::
    :toctree: spectral/
    :template: ../_templates/custom_layout.rst

    kernel_eigenvalue
    kernel_eigenvalues
    mercer_trace
    mercer_reconstruction
    EigSequence
    eig_sequence
    decay_exponent

.. rubric:: Bounds
.. autosummary::
    :toctree: spectral/
    :template: ../_templates/custom_layout.rst

    linf_lower_bound
    tail_sum
    l2_minimax_rate
    kernel_rate_exponents

"""

# flake8: noqa

from ._harmonics import harmonic_dim, gegenbauer_poly, gegenbauer_table, sphere_quadrature
from ._eigen import (
    kernel_eigenvalue,
    kernel_eigenvalues,
    mercer_trace,
    mercer_reconstruction,
    EigSequence,
    eig_sequence,
    decay_exponent,
)
from ._bounds import linf_lower_bound, tail_sum, l2_minimax_rate, kernel_rate_exponents

__all__ = [
    "harmonic_dim",
    "gegenbauer_poly",
    "gegenbauer_table",
    "sphere_quadrature",
    "kernel_eigenvalue",
    "kernel_eigenvalues",
    "mercer_trace",
    "mercer_reconstruction",
    "EigSequence",
    "eig_sequence",
    "decay_exponent",
    "linf_lower_bound",
    "tail_sum",
    "l2_minimax_rate",
    "kernel_rate_exponents",
]
