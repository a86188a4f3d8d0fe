from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class CrossCorrelation:
    """d x d cosine similarities between the columns of two views' embeddings."""

    M: np.ndarray
    lam: float

    @property
    def invariance(self):
        return float(np.sum((np.diag(self.M) - 1.0) ** 2))

    @property
    def redundancy(self):
        off_diagonal = self.M - np.diag(np.diag(self.M))
        return float(np.sum(off_diagonal**2))

    @property
    def loss(self):
        return self.invariance + self.lam * self.redundancy


@dataclass(frozen=True)
class AssignmentPair:
    """Soft assignment Q and the target distribution P derived from it."""

    Q: np.ndarray
    P: np.ndarray
