"""
Shared linear auto-encoder: forward pass and analytic gradients.

Every view goes through the same encoder W (f x d) and decoder W_de (d x f);
there is no bias and no activation. The objective is

    L = L_MSCE + L_FD + L_CLU

with the target distribution P held constant while differentiating.
"""

import logging
from dataclasses import dataclass

import numpy as np

from core.exceptions import DivergenceError, ShapeError
from core.matrices import as_matrix
from losses.services import (
    column_normalize,
    kl_clustering_loss,
    row_cosines,
    total_loss,
    view_pairs,
)

from .structures import LossTerm

logger = logging.getLogger(__name__)


def encode(Xt, W):
    Xt = as_matrix(Xt, "smoothed attributes")
    W = as_matrix(W, "encoder weights")
    if Xt.shape[1] != W.shape[0]:
        raise ShapeError(f"attributes have {Xt.shape[1]} columns but encoder expects {W.shape[0]}")
    return Xt @ W


def decode(Z, W_de):
    Z = as_matrix(Z, "embedding")
    W_de = as_matrix(W_de, "decoder weights")
    if Z.shape[1] != W_de.shape[0]:
        raise ShapeError(f"embedding has {Z.shape[1]} columns but decoder expects {W_de.shape[0]}")
    return Z @ W_de


@dataclass(frozen=True)
class TrainingBatch:
    """
    Everything a gradient evaluation needs besides the parameters.

    views are the smoothed attributes X~^v; target is the detached P.
    """

    views: tuple
    target: np.ndarray
    loss_terms: frozenset
    lam: float

    @property
    def num_views(self):
        return len(self.views)

    @property
    def uses_feature_decorrelation(self):
        return LossTerm.FEATURE_DECORRELATION in self.loss_terms and self.num_views >= 2


@dataclass(frozen=True)
class Gradients:
    W: np.ndarray
    W_de: np.ndarray
    centers: np.ndarray
    l_fd: float
    l_msce: float
    l_clu: float

    @property
    def total(self):
        return total_loss(self.l_msce, self.l_fd, self.l_clu)

    def as_dict(self):
        return {"W": self.W, "W_de": self.W_de, "centers": self.centers}


def embed_views(state, views):
    """
    Returns:
        tuple: (per-view embeddings Z^v, concatenation [Z^1 ... Z^V])
    """
    Z_list = [encode(Xt, state.W) for Xt in views]
    return Z_list, np.hstack(Z_list)


def _barlow_twins_with_grad(Z1, Z2, lam):
    Z1_hat, norms1 = column_normalize(Z1)
    Z2_hat, norms2 = column_normalize(Z2)
    M = Z1_hat.T @ Z2_hat
    diagonal = np.diag(M)
    off_diagonal = M - np.diag(diagonal)
    loss = float(np.sum((diagonal - 1.0) ** 2) + lam * np.sum(off_diagonal**2))

    # dL/dM
    G = 2.0 * lam * off_diagonal + np.diag(2.0 * (diagonal - 1.0))
    d_hat1 = Z2_hat @ G.T
    d_hat2 = Z1_hat @ G
    # back through the column normalization z / ||z||
    dZ1 = (d_hat1 - Z1_hat * np.sum(Z1_hat * d_hat1, axis=0)) / norms1
    dZ2 = (d_hat2 - Z2_hat * np.sum(Z2_hat * d_hat2, axis=0)) / norms2
    return loss, dZ1, dZ2


def _sce_with_grad(Xt, Xr):
    cosines, norm_t, norm_r = row_cosines(Xt, Xr)
    loss = float(np.sum((1.0 - cosines) ** 2))
    scale = -2.0 * (1.0 - cosines)
    d_cos = Xt / (norm_t * norm_r)[:, None] - cosines[:, None] * Xr / (norm_r**2)[:, None]
    return loss, scale[:, None] * d_cos


def _kl_with_grad(Z, centers, P):
    sq_dist = np.sum((Z[:, None, :] - centers[None, :, :]) ** 2, axis=2)
    kernel = 1.0 / (1.0 + sq_dist)
    Q = kernel / kernel.sum(axis=1, keepdims=True)
    loss = kl_clustering_loss(P, Q)
    R = kernel * (P - Q)
    dZ = 2.0 * (R.sum(axis=1)[:, None] * Z - R @ centers)
    d_centers = -2.0 * (R.T @ Z - R.sum(axis=0)[:, None] * centers)
    return loss, dZ, d_centers


def gradients(state, batch, epoch=None):
    """
    Loss components and gradients of the total loss w.r.t. W, W_de and the centers.

    Args:
        state: ModelState
        batch: TrainingBatch (target P is treated as a constant)
        epoch: epoch number used in divergence errors

    Returns:
        Gradients
    """
    views = batch.views
    V = len(views)
    d = state.W.shape[1]
    Z_list, Z_cat = embed_views(state, views)
    if batch.target.shape != (Z_cat.shape[0], state.centers.shape[0]):
        raise ShapeError(f"target distribution has shape {batch.target.shape}")

    dZ = [np.zeros_like(Z) for Z in Z_list]
    dW_de = np.zeros_like(state.W_de)
    d_centers = np.zeros_like(state.centers)
    l_fd = l_msce = l_clu = 0.0

    if batch.uses_feature_decorrelation:
        pairs = view_pairs(V)
        for v1, v2 in pairs:
            loss, dZ1, dZ2 = _barlow_twins_with_grad(Z_list[v1], Z_list[v2], batch.lam)
            l_fd += loss / len(pairs)
            dZ[v1] += dZ1 / len(pairs)
            dZ[v2] += dZ2 / len(pairs)

    if LossTerm.RECONSTRUCTION in batch.loss_terms:
        for v, (Xt, Z) in enumerate(zip(views, Z_list)):
            loss, dXr = _sce_with_grad(Xt, decode(Z, state.W_de))
            l_msce += loss / V
            dXr /= V
            dW_de += Z.T @ dXr
            dZ[v] += dXr @ state.W_de.T

    if LossTerm.CLUSTERING in batch.loss_terms:
        l_clu, dZ_cat, d_centers = _kl_with_grad(Z_cat, state.centers, batch.target)
        for v in range(V):
            dZ[v] += dZ_cat[:, v * d:(v + 1) * d]

    dW = sum(Xt.T @ g for Xt, g in zip(views, dZ))

    total = l_fd + l_msce + l_clu
    if not np.isfinite(total):
        logger.error(f"Non-finite loss at epoch {epoch}: fd={l_fd} msce={l_msce} clu={l_clu}")
        raise DivergenceError(f"non-finite loss {total}", epoch=epoch)
    return Gradients(W=dW, W_de=dW_de, centers=d_centers, l_fd=l_fd, l_msce=l_msce, l_clu=l_clu)


def total_objective(state, batch):
    """Total loss only; used by finite-difference checks."""
    return gradients(state, batch).total
