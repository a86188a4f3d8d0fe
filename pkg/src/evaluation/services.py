import logging

import numpy as np
from scipy.optimize import linear_sum_assignment
from sklearn.metrics import adjusted_rand_score, f1_score, normalized_mutual_info_score

from core.exceptions import InputError, ShapeError

from .structures import ClusterEvaluation

logger = logging.getLogger(__name__)


def _label_pair(pred, truth):
    pred = np.asarray(pred)
    truth = np.asarray(truth)
    if pred.ndim != 1 or truth.ndim != 1:
        raise ShapeError("label arrays must be one-dimensional")
    if pred.shape != truth.shape:
        raise ShapeError(f"{pred.size} predicted labels but {truth.size} true labels")
    if pred.size == 0:
        raise InputError("cannot evaluate an empty labeling")
    if not (np.issubdtype(pred.dtype, np.integer) and np.issubdtype(truth.dtype, np.integer)):
        raise InputError("labels must be integer class ids")
    if pred.min() < 0 or truth.min() < 0:
        raise InputError("labels must be non-negative class ids")
    return pred.astype(np.int64), truth.astype(np.int64)


def contingency(pred, truth):
    """Square count matrix with C[p, t] = #{i : pred_i = p and truth_i = t}."""
    pred, truth = _label_pair(pred, truth)
    size = int(max(pred.max(), truth.max())) + 1
    counts = np.zeros((size, size), dtype=np.int64)
    np.add.at(counts, (pred, truth), 1)
    return counts


def hungarian_accuracy(pred, truth):
    """
    Fraction of nodes correctly labeled under the best one-to-one mapping of
    predicted to true labels.

    Returns:
        tuple: (acc, mapping) with mapping[p] the true label assigned to p
    """
    counts = contingency(pred, truth)
    rows, cols = linear_sum_assignment(counts, maximize=True)
    mapping = np.empty(counts.shape[0], dtype=np.int64)
    mapping[rows] = cols
    acc = counts[rows, cols].sum() / counts.sum()
    return float(acc), tuple(int(t) for t in mapping)


def macro_f1(pred, truth, mapping):
    """Unweighted mean of per-class F1 over the true classes, after mapping the predictions."""
    pred, truth = _label_pair(pred, truth)
    mapping = np.asarray(mapping, dtype=np.int64)
    if pred.max() >= mapping.size:
        raise InputError(f"mapping covers {mapping.size} labels but prediction uses {pred.max() + 1}")
    mapped = mapping[pred]
    return float(f1_score(truth, mapped, labels=np.unique(truth), average="macro", zero_division=0))


def nmi(pred, truth):
    """
    Mutual information over the arithmetic mean of the two entropies.

    Identical single-cluster partitions score 1; a single-cluster side
    against anything else scores 0.
    """
    pred, truth = _label_pair(pred, truth)
    return float(normalized_mutual_info_score(truth, pred, average_method="arithmetic"))


def ari(pred, truth):
    pred, truth = _label_pair(pred, truth)
    if pred.size < 2:
        raise InputError("adjusted Rand index needs at least two points")
    return float(adjusted_rand_score(truth, pred))


def evaluate(pred, truth):
    acc, mapping = hungarian_accuracy(pred, truth)
    evaluation = ClusterEvaluation(
        acc=acc,
        f1=macro_f1(pred, truth, mapping),
        nmi=nmi(pred, truth),
        ari=ari(pred, truth),
        mapping=mapping,
    )
    logger.debug(f"Evaluated {len(pred)} labels: {evaluation}")
    return evaluation
