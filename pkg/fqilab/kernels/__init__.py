"""
Kernels, Gram matrices and regularized kernel regression.

.. currentmodule:: fqilab.kernels

A kernel is a positive definite function on the state space. The sphere
kernels (Laplace, two-layer NTK and first-order arc-cosine) are dot-product
kernels, evaluated from a profile of t = x . y. The delta kernel on one-hot
states gives the tabular setting.

The regression solver fits one function per action in the span of kernel
sections at that action's samples, with the penalty max_a |f(., a)|_H.

.. rubric:: Kernels
.. autosummary::
    :toctree: kernels/
    :template: ../_templates/custom_layout.rst

    Kernel
    ZonalKernel
    LaplacianKernel
    NtkKernel
    ArcCosineKernel
    DeltaKernel
    FeatureKernel
    AugmentedKernel
    make_kernel

.. rubric:: Evaluation
.. autosummary::
    :toctree: kernels/
    :template: ../_templates/custom_layout.rst

    eval_kernel
    gram
    rkhs_norm
    sphere_pair_expectation

.. rubric:: Regression
.. autosummary::
    :toctree: kernels/
    :template: ../_templates/custom_layout.rst

    constrained_krr
    fit_max_norm
    predict
    KernelQ
    BallSolver

"""

# flake8: noqa

from ._base import Kernel, ZonalKernel, eval_kernel, gram, rkhs_norm
from ._sphere import (
    LaplacianKernel,
    NtkKernel,
    ArcCosineKernel,
    sphere_pair_expectation,
    laplacian_profile,
    ntk_profile,
    arccos_profile,
)
from ._finite import DeltaKernel, FeatureKernel, AugmentedKernel
from ._make import make_kernel, kernel_from_dict, canonical_kernel_id
from ._solver import BallSolver, KernelQ, constrained_krr, fit_max_norm, predict

__all__ = [
    "Kernel",
    "ZonalKernel",
    "LaplacianKernel",
    "NtkKernel",
    "ArcCosineKernel",
    "DeltaKernel",
    "FeatureKernel",
    "AugmentedKernel",
    "make_kernel",
    "kernel_from_dict",
    "canonical_kernel_id",
    "eval_kernel",
    "gram",
    "rkhs_norm",
    "sphere_pair_expectation",
    "laplacian_profile",
    "ntk_profile",
    "arccos_profile",
    "BallSolver",
    "KernelQ",
    "constrained_krr",
    "fit_max_norm",
    "predict",
]
