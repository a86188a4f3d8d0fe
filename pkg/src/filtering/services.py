import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from core.exceptions import ParameterError, ShapeError
from core.matrices import as_matrix, require_square
from graphs.services import laplacian, low_pass_filter, mix_pass_filter, normalize_adjacency

from .structures import FilterConfig, FilterKind, FilterMatrix, FilterSolver

logger = logging.getLogger(__name__)

ROW_NORM_FLOOR = 1e-12


def _check_inputs(X, L, cfg):
    if cfg.kind != FilterKind.LEARNED:
        raise ParameterError(f"closed-form solve needs a learned filter config, got '{cfg.kind}'")
    X = as_matrix(X, "attributes")
    L = require_square(L, "Laplacian")
    if L.shape[0] != X.shape[0]:
        raise ShapeError(f"Laplacian is {L.shape[0]}x{L.shape[0]} but attributes have {X.shape[0]} rows")
    return X, L


def ridge_filter_naive(X, phi, gamma):
    """
    K = (X X^T + gamma I)^-1 (gamma phi + X X^T) through an n x n Cholesky solve.
    """
    gram = X @ X.T
    system = gram + gamma * np.eye(X.shape[0])
    return cho_solve(cho_factor(system), gamma * phi + gram)


def ridge_filter_woodbury(X, phi, gamma):
    """
    Same filter as ridge_filter_naive, with the inverse expanded by the Woodbury identity:

        K = phi + X X^T / gamma - X C^-1 X^T (gamma phi + X X^T) / gamma^2,
        C = I + X^T X / gamma.

    Only the f x f matrix C is factorized.
    """
    f = X.shape[1]
    inner = np.eye(f) + (X.T @ X) / gamma
    # X^T (gamma phi + X X^T) without forming the n x n gram
    rhs = gamma * (X.T @ phi) + (X.T @ X) @ X.T
    correction = cho_solve(cho_factor(inner), rhs)
    return phi + (X @ X.T) / gamma - (X @ correction) / gamma**2


def solve_filter_naive(X, L, cfg):
    X, L = _check_inputs(X, L, cfg)
    return ridge_filter_naive(X, low_pass_filter(L, cfg.k), cfg.gamma)


def solve_filter_woodbury(X, L, cfg):
    X, L = _check_inputs(X, L, cfg)
    return ridge_filter_woodbury(X, low_pass_filter(L, cfg.k), cfg.gamma)


def apply_filter(K, X):
    K = require_square(K, "filter")
    X = as_matrix(X, "attributes")
    if K.shape[1] != X.shape[0]:
        raise ShapeError(f"filter is {K.shape[0]}x{K.shape[1]} but attributes have {X.shape[0]} rows")
    return K @ X


def filter_objective(K, X, L, cfg):
    """Value of ||X - K X||_F^2 + gamma ||K - phi(L)||_F^2 for a candidate filter."""
    phi = low_pass_filter(L, cfg.k)
    return np.linalg.norm(X - K @ X) ** 2 + cfg.gamma * np.linalg.norm(K - phi) ** 2


def normalize_rows(X):
    norms = np.linalg.norm(X, axis=1, keepdims=True)
    return X / np.maximum(norms, ROW_NORM_FLOOR)


def view_filter(adjacency, X, cfg):
    """n x n filter K of one view, dispatched on cfg.kind."""
    n = X.shape[0]
    if cfg.kind == FilterKind.IDENTITY:
        return np.eye(n)

    L = laplacian(normalize_adjacency(adjacency))
    if cfg.kind == FilterKind.LOW_PASS:
        return low_pass_filter(L, cfg.k)
    if cfg.kind == FilterKind.MIX_PASS:
        return mix_pass_filter(L)

    solver = cfg.solver
    if solver == FilterSolver.AUTO:
        solver = FilterSolver.WOODBURY if X.shape[1] < n else FilterSolver.NAIVE
    logger.debug(f"Solving learned filter with {solver} path (n={n}, f={X.shape[1]}, gamma={cfg.gamma:g})")
    if solver == FilterSolver.WOODBURY:
        return solve_filter_woodbury(X, L, cfg)
    return solve_filter_naive(X, L, cfg)


def make_filter(adjacency, X, cfg):
    """
    Build the filter of one view.

    Args:
        adjacency: raw adjacency of the view
        X: n x f attributes (already row-normalized if requested)
        cfg: FilterConfig

    Returns:
        FilterMatrix: the single view filter K with cfg as provenance
    """
    return FilterMatrix(matrices=(view_filter(adjacency, X, cfg),), config=cfg)


class ViewFilterService:
    """
    Build the per-view filters of a multi-relational graph and smooth its attributes.
    """

    def __init__(self, config=None, max_workers=1):
        """
        Args:
            config: FilterConfig (defaults to the learned filter)
            max_workers: number of views solved concurrently
        """
        self.config = config or FilterConfig()
        self.max_workers = max(1, int(max_workers))

    def prepared_attributes(self, graph):
        X = graph.attributes
        return normalize_rows(X) if self.config.normalize_rows else X

    def build(self, graph):
        X = self.prepared_attributes(graph)
        if self.max_workers > 1 and graph.V > 1:
            with ThreadPoolExecutor(max_workers=min(self.max_workers, graph.V)) as pool:
                views = list(pool.map(lambda adj: make_filter(adj, X, self.config), graph.adjacency))
        else:
            views = [make_filter(adj, X, self.config) for adj in graph.adjacency]
        matrices = tuple(view[0] for view in views)
        logger.info(f"Built {len(matrices)} {self.config} filters for {graph}")
        return FilterMatrix(matrices=matrices, config=self.config)

    def smooth(self, graph, filters=None):
        """
        Returns:
            list: X~^v = K^v X for every view
        """
        if filters is None:
            filters = self.build(graph)
        X = self.prepared_attributes(graph)
        return [apply_filter(K, X) for K in filters.matrices]
