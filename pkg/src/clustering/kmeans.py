import logging
import warnings

import numpy as np
from sklearn.cluster import KMeans
from sklearn.exceptions import ConvergenceWarning

from core.exceptions import ConfigurationError
from core.matrices import as_matrix

logger = logging.getLogger(__name__)


def kmeans(Z, c, restarts=10, seed=0):
    """
    Lloyd's k-means with k-means++ seeding, best of `restarts` runs by inertia.

    Empty clusters are re-seeded at the points farthest from their centers.

    Args:
        Z: n x D points
        c: number of clusters
        restarts: number of seeded runs
        seed: random seed; identical seeds give identical results

    Returns:
        tuple: (c x D centers, length-n labels)
    """
    Z = as_matrix(Z, "k-means input")
    n = Z.shape[0]
    if c < 1 or n < c:
        raise ConfigurationError(f"cannot form {c} clusters from {n} points")

    model = KMeans(
        n_clusters=c,
        init="k-means++",
        n_init=restarts,
        algorithm="lloyd",
        random_state=seed,
    )
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ConvergenceWarning)
        model.fit(Z)
    for warning in caught:
        if issubclass(warning.category, ConvergenceWarning):
            logger.warning(f"k-means: {warning.message}")

    logger.debug(f"k-means with c={c} finished, inertia={model.inertia_:.6g}")
    return np.asarray(model.cluster_centers_, dtype=np.float64), model.labels_.astype(np.int64)
