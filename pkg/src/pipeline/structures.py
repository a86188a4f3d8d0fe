from dataclasses import dataclass, field, replace
from pathlib import Path

from django.conf import settings
from django.db import models
from django.utils.translation import gettext_lazy as _

from clustering.structures import LossTerm, TrainConfig
from core.exceptions import ConfigurationError
from filtering.structures import FilterKind

SWEEP_CSV_HEADER = ("k", "gamma", "criterion", "score", "acc", "nmi")
ABLATION_CSV_HEADER = ("variant", "acc", "f1", "nmi", "ari")
LFD_CURVE_CSV_HEADER = ("epoch", "variant", "l_fd")


class Criterion(models.TextChoices):
    ACCURACY = "acc", _("Hungarian accuracy against the labels")
    SILHOUETTE = "silhouette", _("Silhouette score of the embedding")


class AblationVariant(models.TextChoices):
    FULL = "full", _("Learned filter, all loss terms")
    LOW_PASS = "low_pass", _("Low-pass filter")
    MIX_PASS = "mix_pass", _("Mix-pass filter")
    IDENTITY = "identity", _("No filter")
    WITHOUT_FD = "wo_fd", _("Without feature decorrelation")
    WITHOUT_MSCE = "wo_msce", _("Without reconstruction")
    WITHOUT_CLU = "wo_clu", _("Without clustering loss")


FILTER_VARIANTS = {
    AblationVariant.FULL: FilterKind.LEARNED,
    AblationVariant.LOW_PASS: FilterKind.LOW_PASS,
    AblationVariant.MIX_PASS: FilterKind.MIX_PASS,
    AblationVariant.IDENTITY: FilterKind.IDENTITY,
}

DROPPED_TERMS = {
    AblationVariant.WITHOUT_FD: LossTerm.FEATURE_DECORRELATION,
    AblationVariant.WITHOUT_MSCE: LossTerm.RECONSTRUCTION,
    AblationVariant.WITHOUT_CLU: LossTerm.CLUSTERING,
}


def variant_config(train, variant):
    """TrainConfig of one ablation variant derived from the base run."""
    full = train.with_changes(
        filter=replace(train.filter, kind=FilterKind.LEARNED),
        loss_terms=frozenset(LossTerm.values),
    )
    if variant in FILTER_VARIANTS:
        return full.with_changes(filter=replace(full.filter, kind=FILTER_VARIANTS[variant]))
    if variant in DROPPED_TERMS:
        return full.with_changes(loss_terms=full.loss_terms - {DROPPED_TERMS[variant]})
    raise ConfigurationError(f"unknown ablation variant '{variant}'")


@dataclass(frozen=True)
class RunConfig:
    """
    One pipeline run: exactly one data source, training settings, output directory.
    """

    train: TrainConfig
    dataset: Path = None
    sbm: object = None
    seed: int = 0
    output_dir: Path = field(default_factory=lambda: settings.BTGF["OUTPUT_DIR"])

    def __post_init__(self):
        if (self.dataset is None) == (self.sbm is None):
            raise ConfigurationError("a run needs exactly one of 'dataset' or 'sbm'")

    def with_seed(self, seed):
        return replace(self, seed=seed, train=self.train.with_changes(seed=seed))

    def with_output_dir(self, output_dir):
        return replace(self, output_dir=Path(output_dir))


@dataclass(frozen=True)
class SweepPoint:
    k: int
    gamma: float
    criterion: str
    score: float
    acc: float = None
    nmi: float = None

    def as_row(self):
        return (self.k, self.gamma, self.criterion, self.score, self.acc, self.nmi)


@dataclass(frozen=True)
class AblationRow:
    variant: str
    acc: float
    f1: float
    nmi: float
    ari: float

    def as_row(self):
        return (self.variant, self.acc, self.f1, self.nmi, self.ari)


@dataclass
class RunOutcome:
    """Trained result, its evaluation (None without labels) and the written files."""

    result: object
    evaluation: object = None
    artifacts: dict = field(default_factory=dict)
    sweep: list = field(default_factory=list)
