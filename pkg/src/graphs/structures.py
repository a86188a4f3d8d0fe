from dataclasses import dataclass, field

import numpy as np

from core.exceptions import ConfigurationError, InputError, ShapeError
from core.matrices import as_matrix

from .services import symmetrize


@dataclass(frozen=True)
class MultiRelationalGraph:
    """
    One node set with V relation-specific adjacency matrices and shared attributes.

    adjacency holds the raw (un-normalized) symmetric matrices, one per view.
    labels, when present, are class ids in [0, c).
    """

    adjacency: tuple
    attributes: np.ndarray
    labels: np.ndarray = None
    name: str = "graph"
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.adjacency) < 1:
            raise ConfigurationError("a multi-relational graph needs at least one view")

        attributes = as_matrix(self.attributes, "attributes")
        n = attributes.shape[0]
        views = []
        for v, adj in enumerate(self.adjacency):
            adj = as_matrix(adj, f"adjacency[{v}]")
            if adj.shape != (n, n):
                raise ShapeError(f"adjacency[{v}] has shape {adj.shape}, expected ({n}, {n})")
            views.append(symmetrize(adj, f"adjacency[{v}]"))

        labels = self.labels
        if labels is not None:
            labels = np.asarray(labels, dtype=np.int64)
            if labels.shape != (n,):
                raise ShapeError(f"labels have shape {labels.shape}, expected ({n},)")
            if labels.size and labels.min() < 0:
                raise InputError("labels must be non-negative class ids")

        object.__setattr__(self, "adjacency", tuple(views))
        object.__setattr__(self, "attributes", attributes)
        object.__setattr__(self, "labels", labels)

    @property
    def n(self):
        return self.attributes.shape[0]

    @property
    def f(self):
        return self.attributes.shape[1]

    @property
    def V(self):
        return len(self.adjacency)

    @property
    def num_classes(self):
        if self.labels is None:
            return None
        return int(self.labels.max()) + 1 if self.labels.size else 0

    def __str__(self):
        return f"{self.name} (n={self.n}, V={self.V}, f={self.f})"
