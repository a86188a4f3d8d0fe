"""
Executable checks of the Barlow Twins bounds.

When the inner product H = X~1^T X~2 of two smoothed views is negative
semi-definite, the Barlow Twins loss of their embeddings cannot drop below

    sum_i (L1_i L2_i / (max L1 * max L2))^2

(L = column norms of the embeddings). When H is positive semi-definite,
every diagonal cross-correlation lies in [0, 1] and the loss stays below

    d + lam * sum_{i != j} M_ij^2.
"""

import logging

import numpy as np
from scipy.linalg import solve

from core.exceptions import ConfigurationError, DomainError, InputError, ShapeError
from core.matrices import as_matrix, require_square, symmetric_part
from losses.services import barlow_twins, column_normalize, cross_correlation, view_pairs

from .structures import (
    BoundRecord,
    BoundTrace,
    Construction,
    Definiteness,
    PairBound,
    BoundTrialReport,
)

logger = logging.getLogger(__name__)

DEFINITENESS_TOLERANCE = 1e-9
BOUND_TOLERANCE = 1e-9
DIAGONAL_TOLERANCE = 1e-12


def inner_product_matrix(Xt1, Xt2):
    Xt1 = as_matrix(Xt1, "first view")
    Xt2 = as_matrix(Xt2, "second view")
    if Xt1.shape != Xt2.shape:
        raise ShapeError(f"views have shapes {Xt1.shape} and {Xt2.shape}")
    return Xt1.T @ Xt2


def symmetric_eigenvalues(H):
    """Eigenvalues (ascending) of the symmetric part (H + H^T) / 2."""
    H = require_square(H, "inner product matrix")
    return np.linalg.eigvalsh(symmetric_part(H))


def definiteness(H, tol=DEFINITENESS_TOLERANCE):
    """
    Classify H through the eigenvalues of its symmetric part, which is all a
    quadratic form w^T H w sees. Tolerance is relative to the spectral norm of H.
    """
    eigenvalues = symmetric_eigenvalues(H)
    scale = np.linalg.norm(H, 2) if H.size else 0.0
    if eigenvalues.size == 0 or eigenvalues[0] >= -tol * scale:
        return Definiteness.PSD
    if eigenvalues[-1] <= tol * scale:
        return Definiteness.NSD
    return Definiteness.INDEFINITE


def norm_ratio_lower_bound(Lam1, Lam2):
    Lam1 = np.asarray(Lam1, dtype=np.float64)
    Lam2 = np.asarray(Lam2, dtype=np.float64)
    if Lam1.shape != Lam2.shape or Lam1.ndim != 1:
        raise ShapeError(f"norm vectors have shapes {Lam1.shape} and {Lam2.shape}")
    if np.any(Lam1 <= 0) or np.any(Lam2 <= 0):
        raise DomainError("column norms must be positive")
    ratios = (Lam1 * Lam2) / (Lam1.max() * Lam2.max())
    return float(np.sum(ratios**2))


def correlation_upper_bound(M, lam):
    M = require_square(M, "cross-correlation")
    off_diagonal = M - np.diag(np.diag(M))
    return float(M.shape[0] + lam * np.sum(off_diagonal**2))


def pair_bounds(Z_list, lam, min_eigs):
    """
    Barlow Twins value and both bounds for every view pair of one epoch.

    Args:
        Z_list: per-view embeddings
        lam: Barlow Twins trade-off
        min_eigs: mapping (v1, v2) -> min eigenvalue of sym(H^{v1,v2})

    Returns:
        tuple: PairBound per pair, pairs in (v1 < v2) order
    """
    bounds = []
    for v1, v2 in view_pairs(len(Z_list)):
        Z1_hat, norms1 = column_normalize(Z_list[v1])
        Z2_hat, norms2 = column_normalize(Z_list[v2])
        M = Z1_hat.T @ Z2_hat
        off_diagonal = M - np.diag(np.diag(M))
        l_fd = float(np.sum((np.diag(M) - 1.0) ** 2) + lam * np.sum(off_diagonal**2))
        bounds.append(PairBound(
            pair=(v1, v2),
            l_fd=l_fd,
            lower=norm_ratio_lower_bound(norms1, norms2),
            upper=correlation_upper_bound(M, lam),
            min_eig=float(min_eigs[(v1, v2)]),
        ))
    return tuple(bounds)


def view_min_eigenvalues(views):
    return {
        (v1, v2): symmetric_eigenvalues(inner_product_matrix(views[v1], views[v2]))[0]
        for v1, v2 in view_pairs(len(views))
    }


def trace_bounds(history, path=None):
    """
    Flatten the per-pair bounds recorded in a training history.

    Args:
        history: list of LossReport
        path: optional CSV destination (epoch,pair,l_fd,lower,upper,min_eig)

    Returns:
        BoundTrace
    """
    if not history:
        raise InputError("cannot trace bounds of an empty training history")
    records = tuple(
        BoundRecord(
            epoch=report.epoch,
            pair=bound.label,
            l_fd=bound.l_fd,
            lower=bound.lower,
            upper=bound.upper,
            min_eig=bound.min_eig,
        )
        for report in history
        for bound in report.pair_bounds
    )
    trace = BoundTrace(records=records, epochs=len(history))
    if path is not None:
        from datasets.exports import export_bounds

        export_bounds(trace, path)
    return trace


def construct_views(rng, n, f, sign, construction=Construction.MIRROR):
    """
    Two smoothed views whose inner product has a known sign.

    mirror: X~2 = sign * X~1, so H = sign * X~1^T X~1.
    gram:   X~2 = sign * X~1 (X~1^T X~1)^-1 S for a random PSD S, so H = sign * S.
    """
    Xt1 = rng.standard_normal((n, f))
    if construction == Construction.MIRROR:
        return Xt1, sign * Xt1
    if construction == Construction.GRAM:
        if n < f:
            raise ConfigurationError(f"gram construction needs n >= f, got n={n}, f={f}")
        B = rng.standard_normal((f, f))
        S = B @ B.T
        return Xt1, sign * (Xt1 @ solve(Xt1.T @ Xt1, S, assume_a="pos"))
    raise ConfigurationError(f"unknown construction '{construction}'")


def check_lower_bound(Xt1, Xt2, W, lam):
    """
    Returns:
        tuple: (Barlow Twins value, lower bound)
    """
    Z1, Z2 = Xt1 @ W, Xt2 @ W
    _, norms1 = column_normalize(Z1)
    _, norms2 = column_normalize(Z2)
    return barlow_twins(Z1, Z2, lam), norm_ratio_lower_bound(norms1, norms2)


def check_upper_bound(Xt1, Xt2, W, lam):
    """
    Returns:
        tuple: (Barlow Twins value, upper bound, cross-correlation diagonal)
    """
    Z1, Z2 = Xt1 @ W, Xt2 @ W
    M = cross_correlation(Z1, Z2)
    return barlow_twins(Z1, Z2, lam), correlation_upper_bound(M, lam), np.diag(M)


def run_bound_trials(trials, seed=0, n=30, f=8, d=4, lam=0.0051, construction=Construction.MIRROR):
    """
    Randomized checks of both bounds.

    Each trial draws a view, builds a partner with a negative (lower bound)
    or positive (upper bound) semi-definite inner product, and a random
    encoder W.

    Returns:
        tuple: (lower-bound BoundTrialReport, upper-bound BoundTrialReport)
    """
    if trials < 1:
        raise ConfigurationError(f"need at least one trial, got {trials}")
    rng = np.random.default_rng(seed)
    lower_report = BoundTrialReport(name="lower bound (NSD inner product)")
    upper_report = BoundTrialReport(name="upper bound (PSD inner product)")

    for trial in range(trials):
        Xt1, Xt2 = construct_views(rng, n, f, -1.0, construction)
        W = rng.standard_normal((f, d))
        value, lower = check_lower_bound(Xt1, Xt2, W, lam)
        nsd = definiteness(inner_product_matrix(Xt1, Xt2)) == Definiteness.NSD
        lower_report.record(trial, value - lower, nsd and value >= lower - BOUND_TOLERANCE)

        Xt1, Xt2 = construct_views(rng, n, f, 1.0, construction)
        W = rng.standard_normal((f, d))
        value, upper, diagonal = check_upper_bound(Xt1, Xt2, W, lam)
        psd = definiteness(inner_product_matrix(Xt1, Xt2)) == Definiteness.PSD
        in_range = np.all(diagonal >= -DIAGONAL_TOLERANCE) and np.all(diagonal <= 1.0 + DIAGONAL_TOLERANCE)
        upper_report.record(trial, upper - value, psd and in_range and value <= upper + BOUND_TOLERANCE)

    logger.info(str(lower_report))
    logger.info(str(upper_report))
    return lower_report, upper_report
