from dataclasses import dataclass, field, replace

import numpy as np
from django.conf import settings
from django.db import models
from django.utils.translation import gettext_lazy as _

from core.exceptions import ParameterError
from filtering.structures import FilterConfig

PARAMETER_NAMES = ("W", "W_de", "centers")


class LossTerm(models.TextChoices):
    FEATURE_DECORRELATION = "fd", _("Feature decorrelation (Barlow Twins)")
    RECONSTRUCTION = "msce", _("Mean scaled cosine error")
    CLUSTERING = "clu", _("KL clustering loss")


def _default(name):
    return field(default_factory=lambda: settings.BTGF[name])


@dataclass(frozen=True)
class TrainConfig:
    """
    Hyperparameters of one training run. Defaults come from settings.BTGF.
    """

    epochs: int = _default("EPOCHS")
    learning_rate: float = _default("LEARNING_RATE")
    weight_decay: float = _default("WEIGHT_DECAY")
    embedding_dim: int = _default("EMBEDDING_DIM")
    seed: int = 0
    filter: FilterConfig = field(
        default_factory=lambda: FilterConfig(
            gamma=settings.BTGF["GAMMA"], k=settings.BTGF["FILTER_ORDER"]
        )
    )
    target_refresh_interval: int = _default("TARGET_REFRESH_INTERVAL")
    kmeans_restarts: int = _default("KMEANS_RESTARTS")
    loss_terms: frozenset = frozenset(LossTerm.values)
    barlow_lambda: float = _default("BARLOW_LAMBDA")

    def __post_init__(self):
        if self.epochs < 1:
            raise ParameterError(f"epochs must be >= 1, got {self.epochs}")
        if not self.learning_rate > 0:
            raise ParameterError(f"learning rate must be positive, got {self.learning_rate}")
        if self.weight_decay < 0:
            raise ParameterError(f"weight decay must be nonnegative, got {self.weight_decay}")
        if self.embedding_dim < 1:
            raise ParameterError(f"embedding dimension must be >= 1, got {self.embedding_dim}")
        if self.target_refresh_interval < 1:
            raise ParameterError("target refresh interval must be >= 1")
        if self.kmeans_restarts < 1:
            raise ParameterError("k-means needs at least one restart")
        unknown = set(self.loss_terms) - set(LossTerm.values)
        if unknown:
            raise ParameterError(f"unknown loss terms {sorted(unknown)}")
        object.__setattr__(self, "loss_terms", frozenset(self.loss_terms))

    def uses(self, term):
        return term in self.loss_terms

    def with_changes(self, **changes):
        return replace(self, **changes)


@dataclass
class ModelState:
    """
    Parameters of the shared linear auto-encoder and the cluster centers.

    moments maps a parameter name to its (first, second) Adam moment buffers;
    step counts Adam updates.
    """

    W: np.ndarray
    W_de: np.ndarray
    centers: np.ndarray
    moments: dict = field(default_factory=dict)
    step: int = 0
    epoch: int = 0

    def __post_init__(self):
        for name in PARAMETER_NAMES:
            if name not in self.moments:
                value = getattr(self, name)
                self.moments[name] = (np.zeros_like(value), np.zeros_like(value))

    def parameters(self):
        return {name: getattr(self, name) for name in PARAMETER_NAMES}

    def is_finite(self):
        return all(np.all(np.isfinite(value)) for value in self.parameters().values())


@dataclass(frozen=True)
class LossReport:
    """
    Loss components of one epoch, evaluated before that epoch's update.

    l_fd is measured whenever there are two or more views, even when the
    term is left out of the objective; total only sums active terms.
    """

    epoch: int
    l_fd: float
    l_msce: float
    l_clu: float
    total: float
    lower_bound: float = None
    upper_bound: float = None
    fd_omitted: bool = False
    pair_bounds: tuple = ()


@dataclass
class TrainResult:
    state: ModelState
    history: list
    labels: np.ndarray
    Q: np.ndarray
    embedding: np.ndarray
    config: TrainConfig
