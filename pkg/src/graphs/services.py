import logging

import numpy as np

from core.exceptions import InputError, ParameterError, SymmetryError
from core.matrices import require_square

logger = logging.getLogger(__name__)

SYMMETRY_TOLERANCE = 1e-9


def symmetrize(adj, name="adjacency"):
    """
    Validate a raw adjacency matrix and remove round-off asymmetry.

    Asymmetry up to SYMMETRY_TOLERANCE is averaged away as (A + A^T) / 2,
    anything larger is rejected.

    Args:
        adj: square nonnegative matrix
        name: label used in error messages

    Returns:
        np.ndarray: exactly symmetric matrix
    """
    adj = require_square(adj, name)
    if np.any(adj < 0):
        raise InputError(f"{name} has negative entries")
    asymmetry = np.max(np.abs(adj - adj.T)) if adj.size else 0.0
    if asymmetry > SYMMETRY_TOLERANCE:
        raise SymmetryError(f"{name} is not symmetric (max |A - A^T| = {asymmetry:.3g})")
    return (adj + adj.T) / 2.0


def normalize_adjacency(adj):
    """
    Renormalized adjacency D^-1/2 (A + I) D^-1/2, with D the degree matrix of A + I.

    Self-loops are added before the degree is taken, so every degree is at
    least one.
    """
    adj = symmetrize(adj)
    looped = adj + np.eye(adj.shape[0])
    d_inv_sqrt = 1.0 / np.sqrt(looped.sum(axis=1))
    return d_inv_sqrt[:, None] * looped * d_inv_sqrt[None, :]


def laplacian(A):
    A = require_square(A, "normalized adjacency")
    return np.eye(A.shape[0]) - A


def low_pass_filter(L, k):
    """
    Low-pass polynomial (I - L/2)^k.

    Args:
        L: graph Laplacian
        k: filter order, k >= 1

    Returns:
        np.ndarray: n x n filter
    """
    if int(k) != k or k < 1:
        raise ParameterError(f"filter order must be a positive integer, got {k}")
    L = require_square(L, "Laplacian")
    return np.linalg.matrix_power(np.eye(L.shape[0]) - L / 2.0, int(k))


def mix_pass_filter(L):
    L = require_square(L, "Laplacian")
    half = L / 2.0
    low = np.eye(L.shape[0]) - half
    return low @ low + half @ half


def view_laplacians(graph):
    """Laplacian of the renormalized adjacency of every view of a MultiRelationalGraph."""
    return [laplacian(normalize_adjacency(adj)) for adj in graph.adjacency]
