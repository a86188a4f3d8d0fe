import logging

import numpy as np
from django.conf import settings
from scipy.linalg import svdvals

from bounds.services import pair_bounds, view_min_eigenvalues
from core.exceptions import ConfigurationError, DegenerateColumnError
from filtering.services import ViewFilterService
from losses.services import column_normalize, soft_assignment, target_distribution

from .autoencoder import TrainingBatch, embed_views, encode, gradients
from .kmeans import kmeans
from .optim import adam_step
from .structures import LossReport, LossTerm, ModelState, TrainConfig, TrainResult

logger = logging.getLogger(__name__)

# Second singular value relative to the first below which an embedding counts as rank 1
COLLAPSE_TOLERANCE = 1e-10


def assign_labels(Q):
    """
    Cluster id of every node as the argmax of its soft assignment row.

    np.argmax returns the first maximum, so ties go to the smallest index.
    """
    return np.argmax(np.asarray(Q), axis=1).astype(np.int64)


def require_spread(Z, tol=COLLAPSE_TOLERANCE):
    """
    Reject embeddings whose rows all lie on one line through the origin.

    Identical attribute rows give such a rank-1 embedding under every filter.
    """
    if min(Z.shape) < 2:
        return
    singular_values = svdvals(Z)
    if singular_values[1] <= tol * singular_values[0]:
        raise DegenerateColumnError(
            f"embedding has rank 1 across {Z.shape[0]} nodes (representation collapse); "
            "node attributes carry no distinguishing signal"
        )


def initial_weights(rng, f, d):
    """
    Encoder and decoder weights drawn uniformly in +/- 1/sqrt(fan_in).

    Returns:
        tuple: (W f x d, W_de d x f)
    """
    W = rng.uniform(-1.0, 1.0, size=(f, d)) / np.sqrt(f)
    W_de = rng.uniform(-1.0, 1.0, size=(d, f)) / np.sqrt(d)
    return W, W_de


class ClusteringTrainer:
    """
    End-to-end training: per-view filters, shared linear auto-encoder,
    k-means initialised cluster centers and full-batch Adam epochs.
    """

    def __init__(self, config=None, max_workers=None):
        """
        Args:
            config: TrainConfig (settings defaults when omitted)
            max_workers: threads used for the per-view filter solves
        """
        self.config = config or TrainConfig()
        self.max_workers = max_workers or settings.BTGF["MAX_WORKERS"]

    def smooth(self, graph):
        service = ViewFilterService(self.config.filter, max_workers=self.max_workers)
        return tuple(service.smooth(graph))

    def initial_state(self, views, n_clusters):
        cfg = self.config
        rng = np.random.default_rng(cfg.seed)
        f = views[0].shape[1]
        W, W_de = initial_weights(rng, f, cfg.embedding_dim)

        Z_list = [encode(Xt, W) for Xt in views]
        Z_cat = np.hstack(Z_list)
        # Collapsed inputs must fail here rather than feed k-means zero or rank-1 embeddings
        for Z in Z_list:
            column_normalize(Z)
        require_spread(Z_cat)

        centers, _ = kmeans(Z_cat, n_clusters, restarts=cfg.kmeans_restarts, seed=cfg.seed)
        return ModelState(W=W, W_de=W_de, centers=centers)

    def train(self, graph, n_clusters=None):
        """
        Train on a MultiRelationalGraph.

        Args:
            graph: MultiRelationalGraph
            n_clusters: number of clusters (defaults to the number of label classes)

        Returns:
            TrainResult
        """
        cfg = self.config
        n_clusters = n_clusters or graph.num_classes
        if not n_clusters:
            raise ConfigurationError("number of clusters is required for unlabeled graphs")

        fd_omitted = graph.V < 2 and cfg.uses(LossTerm.FEATURE_DECORRELATION)
        if fd_omitted:
            logger.warning(f"{graph} has a single view; feature decorrelation is omitted")

        views = self.smooth(graph)
        state = self.initial_state(views, n_clusters)
        min_eigs = view_min_eigenvalues(views)
        log_every = settings.BTGF["LOG_EVERY"]

        logger.info(
            f"Training on {graph} with c={n_clusters}, d={cfg.embedding_dim}, "
            f"filter={cfg.filter}, epochs={cfg.epochs}, terms={sorted(cfg.loss_terms)}"
        )

        history = []
        target = None
        for epoch in range(1, cfg.epochs + 1):
            state.epoch = epoch
            Z_list, Z_cat = embed_views(state, views)
            if target is None or (epoch - 1) % cfg.target_refresh_interval == 0:
                target = target_distribution(soft_assignment(Z_cat, state.centers))

            batch = TrainingBatch(views=views, target=target, loss_terms=cfg.loss_terms, lam=cfg.barlow_lambda)
            grads = gradients(state, batch, epoch=epoch)
            history.append(self._report(epoch, grads, Z_list, min_eigs, fd_omitted))

            # without the KL term the centers get a zero gradient and keep their k-means position
            state = adam_step(state, grads.as_dict(), cfg.learning_rate, cfg.weight_decay)

            if epoch == 1 or epoch % log_every == 0 or epoch == cfg.epochs:
                report = history[-1]
                logger.info(
                    f"epoch {epoch}/{cfg.epochs}: total={report.total:.5f} fd={report.l_fd:.5f} "
                    f"msce={report.l_msce:.5f} clu={report.l_clu:.5f}"
                )

        _, Z_cat = embed_views(state, views)
        Q = soft_assignment(Z_cat, state.centers)
        labels = assign_labels(Q)
        return TrainResult(state=state, history=history, labels=labels, Q=Q, embedding=Z_cat, config=cfg)

    def _report(self, epoch, grads, Z_list, min_eigs, fd_omitted):
        cfg = self.config
        bounds = pair_bounds(Z_list, cfg.barlow_lambda, min_eigs) if len(Z_list) >= 2 else ()
        l_fd = float(np.mean([b.l_fd for b in bounds])) if bounds else 0.0
        return LossReport(
            epoch=epoch,
            l_fd=l_fd,
            l_msce=grads.l_msce,
            l_clu=grads.l_clu,
            total=grads.total,
            lower_bound=float(np.mean([b.lower for b in bounds])) if bounds else None,
            upper_bound=float(np.mean([b.upper for b in bounds])) if bounds else None,
            fd_omitted=fd_omitted,
            pair_bounds=bounds,
        )
