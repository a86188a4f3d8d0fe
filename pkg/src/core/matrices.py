"""
Validation helpers for the dense float64 matrices passed between apps.
"""

import numpy as np

from .exceptions import InputError, ShapeError


def as_matrix(values, name="matrix"):
    """
    Coerce input to a finite 2-D float64 array.

    Args:
        values: array-like
        name: label used in error messages

    Returns:
        np.ndarray: 2-D float64 array
    """
    matrix = np.asarray(values, dtype=np.float64)
    if matrix.ndim != 2:
        raise ShapeError(f"{name} must be 2-D, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise InputError(f"{name} contains non-finite values")
    return matrix


def require_square(matrix, name="matrix"):
    matrix = as_matrix(matrix, name)
    rows, cols = matrix.shape
    if rows != cols:
        raise ShapeError(f"{name} must be square, got {rows}x{cols}")
    return matrix


def require_same_shape(first, second, names=("first", "second")):
    if first.shape != second.shape:
        raise ShapeError(
            f"{names[0]} {first.shape} and {names[1]} {second.shape} must have the same shape"
        )


def symmetric_part(matrix):
    return (matrix + matrix.T) / 2.0
