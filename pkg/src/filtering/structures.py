from dataclasses import dataclass

from django.db import models
from django.utils.translation import gettext_lazy as _

from core.exceptions import ParameterError


class FilterKind(models.TextChoices):
    LEARNED = "learned", _("Learned (Barlow Twins guided)")
    LOW_PASS = "low_pass", _("Low-pass (I - L/2)^k")
    MIX_PASS = "mix_pass", _("Mix-pass (I - L/2)^2 + (L/2)^2")
    IDENTITY = "identity", _("No filter")


class FilterSolver(models.TextChoices):
    AUTO = "auto", _("Woodbury when f < n, naive otherwise")
    NAIVE = "naive", _("n x n solve")
    WOODBURY = "woodbury", _("f x f solve")


@dataclass(frozen=True)
class FilterConfig:
    """
    Parameters of the per-view filter.

    gamma trades attribute self-expression against staying close to the
    low-pass filter of order k.
    """

    kind: str = FilterKind.LEARNED
    gamma: float = 10.0
    k: int = 2
    normalize_rows: bool = False
    solver: str = FilterSolver.AUTO

    def __post_init__(self):
        if self.kind not in FilterKind.values:
            raise ParameterError(f"unknown filter kind '{self.kind}'")
        if self.solver not in FilterSolver.values:
            raise ParameterError(f"unknown filter solver '{self.solver}'")
        if not self.gamma > 0:
            raise ParameterError(f"gamma must be positive, got {self.gamma}")
        if int(self.k) != self.k or self.k < 1:
            raise ParameterError(f"filter order must be a positive integer, got {self.k}")

    def __str__(self):
        if self.kind == FilterKind.LEARNED:
            return f"{self.kind}(gamma={self.gamma:g}, k={self.k})"
        if self.kind == FilterKind.LOW_PASS:
            return f"{self.kind}(k={self.k})"
        return str(self.kind)


@dataclass(frozen=True)
class FilterMatrix:
    """One n x n filter K^v per view, with the config that produced them."""

    matrices: tuple
    config: FilterConfig

    def __len__(self):
        return len(self.matrices)

    def __getitem__(self, view):
        return self.matrices[view]
