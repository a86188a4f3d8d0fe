from dataclasses import dataclass, field

import numpy as np
from django.db import models
from django.utils.translation import gettext_lazy as _

BOUND_CSV_HEADER = ("epoch", "pair", "l_fd", "lower", "upper", "min_eig")


class Definiteness(models.TextChoices):
    PSD = "psd", _("Positive semi-definite")
    NSD = "nsd", _("Negative semi-definite")
    INDEFINITE = "indefinite", _("Indefinite")


class Construction(models.TextChoices):
    MIRROR = "mirror", _("Second view is +/- the first")
    GRAM = "gram", _("Inner product equals +/- a random PSD matrix")


@dataclass(frozen=True)
class PairBound:
    """Barlow Twins value of one view pair with its lower and upper bounds."""

    pair: tuple
    l_fd: float
    lower: float
    upper: float
    min_eig: float

    @property
    def label(self):
        return f"{self.pair[0]}-{self.pair[1]}"


@dataclass(frozen=True)
class BoundRecord:
    epoch: int
    pair: str
    l_fd: float
    lower: float
    upper: float
    min_eig: float

    def as_row(self):
        return (self.epoch, self.pair, self.l_fd, self.lower, self.upper, self.min_eig)


@dataclass(frozen=True)
class BoundTrace:
    """Per-epoch, per-pair bound records of a training run."""

    records: tuple
    epochs: int

    def averaged(self):
        """
        Returns:
            list: (epoch, mean l_fd, mean lower, mean upper) per epoch, pairs averaged
        """
        by_epoch = {}
        for record in self.records:
            by_epoch.setdefault(record.epoch, []).append(record)
        rows = []
        for epoch in sorted(by_epoch):
            group = by_epoch[epoch]
            rows.append((
                epoch,
                float(np.mean([r.l_fd for r in group])),
                float(np.mean([r.lower for r in group])),
                float(np.mean([r.upper for r in group])),
            ))
        return rows


@dataclass
class BoundTrialReport:
    """Outcome of the randomized checks of one bound."""

    name: str
    trials: int = 0
    passed: int = 0
    min_gap: float = np.inf
    failures: list = field(default_factory=list)

    def record(self, trial, gap, ok):
        self.trials += 1
        self.min_gap = min(self.min_gap, gap)
        if ok:
            self.passed += 1
        else:
            self.failures.append(trial)

    @property
    def ok(self):
        return self.trials > 0 and self.passed == self.trials

    def __str__(self):
        return f"{self.name}: {self.passed}/{self.trials} passed, min gap {self.min_gap:.6g}"
