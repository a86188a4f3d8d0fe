from dataclasses import dataclass
from pathlib import Path

import numpy as np

from core.exceptions import ParameterError


@dataclass(frozen=True)
class DatasetManifest:
    """
    Files making up one dataset on disk. Paths are absolute, resolved
    against the manifest's directory.
    """

    name: str
    n: int
    V: int
    relations: tuple
    attributes: Path
    labels: Path = None
    c: int = None
    path: Path = None

    def files(self):
        files = list(self.relations) + [self.attributes]
        if self.labels is not None:
            files.append(self.labels)
        return files


@dataclass(frozen=True)
class SbmConfig:
    """
    Planted-partition generator settings.

    Views get independent Bernoulli edges: probability intra[v] inside a
    block and inter[v] across blocks. Block b's attribute mean is
    `separation` on every feature j with j % len(blocks) == b and zero
    elsewhere; attributes add Gaussian noise of scale `noise`.
    """

    blocks: tuple = (50, 50, 50)
    intra: tuple = (0.5, 0.4)
    inter: tuple = (0.02, 0.02)
    features: int = 20
    separation: float = 5.0
    noise: float = 1.0
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(int(b) for b in self.blocks))
        object.__setattr__(self, "intra", tuple(float(p) for p in self.intra))
        object.__setattr__(self, "inter", tuple(float(p) for p in self.inter))
        if not self.blocks or min(self.blocks) < 1:
            raise ParameterError(f"block sizes must be >= 1, got {list(self.blocks)}")
        if len(self.intra) != len(self.inter) or not self.intra:
            raise ParameterError("intra and inter need one probability per view")
        for p in self.intra + self.inter:
            if not 0.0 <= p <= 1.0:
                raise ParameterError(f"edge probability {p} outside [0, 1]")
        if self.features < len(self.blocks):
            raise ParameterError(f"need at least {len(self.blocks)} features to separate the blocks")
        if self.separation < 0 or self.noise < 0:
            raise ParameterError("separation and noise must be nonnegative")

    @property
    def n(self):
        return sum(self.blocks)

    @property
    def V(self):
        return len(self.intra)

    def block_labels(self):
        return np.repeat(np.arange(len(self.blocks)), self.blocks).astype(np.int64)

    def block_means(self):
        means = np.zeros((len(self.blocks), self.features))
        for j in range(self.features):
            means[j % len(self.blocks), j] = self.separation
        return means
