"""
Objectives of the clustering auto-encoder.

All functions take float64 arrays and return plain floats or arrays; nothing
here keeps state. Degenerate inputs (zero-norm columns or rows, empty
clusters) raise instead of propagating NaN.
"""

import logging
from itertools import combinations

import numpy as np

from core.exceptions import (
    ConfigurationError,
    DegenerateClusterError,
    DegenerateColumnError,
    DegenerateRowError,
    DomainError,
    ParameterError,
    ShapeError,
)
from core.matrices import as_matrix, require_same_shape

from .structures import AssignmentPair, CrossCorrelation

logger = logging.getLogger(__name__)

DEGENERATE_NORM = 1e-12


def column_normalize(Z):
    """
    Scale every column of Z to unit l2 norm.

    Args:
        Z: n x d embedding

    Returns:
        tuple: (Z_hat, norms) with Z_hat = Z diag(norms)^-1
    """
    Z = as_matrix(Z, "embedding")
    norms = np.linalg.norm(Z, axis=0)
    collapsed = np.flatnonzero(norms < DEGENERATE_NORM)
    if collapsed.size:
        raise DegenerateColumnError(
            f"embedding columns {collapsed.tolist()} have zero norm (representation collapse)"
        )
    return Z / norms, norms


def cross_correlation(Z1, Z2):
    Z1 = as_matrix(Z1, "first embedding")
    Z2 = as_matrix(Z2, "second embedding")
    require_same_shape(Z1, Z2, ("first embedding", "second embedding"))
    Z1_hat, _ = column_normalize(Z1)
    Z2_hat, _ = column_normalize(Z2)
    return Z1_hat.T @ Z2_hat


def correlation_report(Z1, Z2, lam):
    return CrossCorrelation(M=cross_correlation(Z1, Z2), lam=lam)


def barlow_twins(Z1, Z2, lam):
    """
    sum_i (M_ii - 1)^2 + lam * sum_{i != j} M_ij^2 over the cross-correlation M.
    """
    if not lam >= 0:
        raise ParameterError(f"Barlow Twins trade-off must be nonnegative, got {lam}")
    return correlation_report(Z1, Z2, lam).loss


def view_pairs(V):
    """Unordered view pairs (v1, v2) with v1 < v2, in lexicographic order."""
    return list(combinations(range(V), 2))


def feature_decorrelation(Z_list, lam):
    if len(Z_list) < 2:
        raise ConfigurationError(f"feature decorrelation needs at least 2 views, got {len(Z_list)}")
    pairs = view_pairs(len(Z_list))
    total = sum(barlow_twins(Z_list[v1], Z_list[v2], lam) for v1, v2 in pairs)
    return total / len(pairs)


def _student_t_kernel(Z, centers):
    Z = as_matrix(Z, "embedding")
    centers = as_matrix(centers, "cluster centers")
    if Z.shape[1] != centers.shape[1]:
        raise ShapeError(f"embedding width {Z.shape[1]} does not match center width {centers.shape[1]}")
    sq_dist = np.sum((Z[:, None, :] - centers[None, :, :]) ** 2, axis=2)
    return 1.0 / (1.0 + sq_dist)


def soft_assignment(Z, centers):
    """
    Student's t similarity (one degree of freedom) of each node to each center,
    normalized over centers.

    Args:
        Z: n x D embedding
        centers: c x D cluster centers

    Returns:
        np.ndarray: n x c matrix Q with unit row sums
    """
    kernel = _student_t_kernel(Z, centers)
    return kernel / kernel.sum(axis=1, keepdims=True)


def target_distribution(Q):
    Q = as_matrix(Q, "soft assignment")
    frequency = Q.sum(axis=0)
    empty = np.flatnonzero(frequency < DEGENERATE_NORM)
    if empty.size:
        raise DegenerateClusterError(f"clusters {empty.tolist()} received no assignment mass")
    weight = Q**2 / frequency
    return weight / weight.sum(axis=1, keepdims=True)


def assignment_pair(Z, centers):
    Q = soft_assignment(Z, centers)
    return AssignmentPair(Q=Q, P=target_distribution(Q))


def kl_clustering_loss(P, Q):
    P = as_matrix(P, "target distribution")
    Q = as_matrix(Q, "soft assignment")
    require_same_shape(P, Q, ("target distribution", "soft assignment"))
    if np.any(P <= 0) or np.any(Q <= 0):
        raise DomainError("KL divergence needs strictly positive distributions")
    return float(np.sum(P * np.log(P / Q)))


def row_cosines(Xt, Xr):
    """
    Per-row cosine similarity between smoothed inputs and reconstructions.

    Returns:
        tuple: (cosines, input row norms, reconstruction row norms)
    """
    Xt = as_matrix(Xt, "smoothed attributes")
    Xr = as_matrix(Xr, "reconstruction")
    require_same_shape(Xt, Xr, ("smoothed attributes", "reconstruction"))
    norm_t = np.linalg.norm(Xt, axis=1)
    norm_r = np.linalg.norm(Xr, axis=1)
    for label, norms in (("smoothed attribute", norm_t), ("reconstruction", norm_r)):
        zero_rows = np.flatnonzero(norms < DEGENERATE_NORM)
        if zero_rows.size:
            raise DegenerateRowError(f"{label} rows {zero_rows[:10].tolist()} have zero norm")
    cosines = np.sum(Xt * Xr, axis=1) / (norm_t * norm_r)
    return cosines, norm_t, norm_r


def sce(Xt, Xr):
    cosines, _, _ = row_cosines(Xt, Xr)
    return float(np.sum((1.0 - cosines) ** 2))


def msce(pairs):
    if len(pairs) < 1:
        raise ConfigurationError("reconstruction loss needs at least one view")
    return sum(sce(Xt, Xr) for Xt, Xr in pairs) / len(pairs)


def total_loss(l_msce, l_fd, l_clu):
    return l_msce + l_fd + l_clu
