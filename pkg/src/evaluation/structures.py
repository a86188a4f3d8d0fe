from dataclasses import dataclass

METRIC_NAMES = ("acc", "f1", "nmi", "ari")


@dataclass(frozen=True)
class ClusterEvaluation:
    """
    Clustering quality against ground truth.

    mapping[p] is the true label matched to predicted label p.
    """

    acc: float
    f1: float
    nmi: float
    ari: float
    mapping: tuple = ()

    def as_row(self):
        return tuple(getattr(self, name) for name in METRIC_NAMES)

    def __str__(self):
        return f"ACC={self.acc:.4f} F1={self.f1:.4f} NMI={self.nmi:.4f} ARI={self.ari:.4f}"
