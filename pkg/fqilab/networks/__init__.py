"""
Two-layer ReLU networks with path-norm regularization.

.. currentmodule:: fqilab.networks

.. autosummary::
    :toctree: networks/
    :template: ../_templates/custom_layout.rst

    TwoLayerQ
    forward
    path_norm
    TrainConfig
    train_regularized
    BarronTarget
    make_barron_target

"""

# flake8: noqa

from ._model import TwoLayerQ, BarronTarget, forward, path_norm, make_barron_target, relu
from ._train import TrainConfig, train_regularized

__all__ = [
    "TwoLayerQ",
    "BarronTarget",
    "forward",
    "path_norm",
    "make_barron_target",
    "TrainConfig",
    "train_regularized",
]
