import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from itertools import product
from pathlib import Path

import numpy as np
from django.conf import settings
from sklearn.metrics import silhouette_score

from bounds.services import trace_bounds
from clustering.checkpoints import save_checkpoint
from clustering.services import ClusteringTrainer
from core.configs import load_yaml, validate_with
from core.exceptions import ConfigurationError
from datasets.exports import export_embeddings, export_labels, export_losses, export_metrics, write_table
from datasets.services import generate_sbm, load_dataset
from evaluation.services import evaluate, hungarian_accuracy, nmi
from filtering.structures import FilterKind

from .serializers import RunConfigSerializer
from .structures import (
    ABLATION_CSV_HEADER,
    FILTER_VARIANTS,
    LFD_CURVE_CSV_HEADER,
    SWEEP_CSV_HEADER,
    AblationRow,
    AblationVariant,
    Criterion,
    RunOutcome,
    SweepPoint,
    variant_config,
)

logger = logging.getLogger(__name__)

ARTIFACT_NAMES = {
    "metrics": "metrics.csv",
    "losses": "losses.csv",
    "bounds": "bounds.csv",
    "embeddings": "embeddings.csv",
    "labels": "labels.txt",
    "checkpoint": "checkpoint.npz",
    "sweep": "sweep.csv",
    "ablation": "ablation.csv",
    "lfd_curves": "lfd_curves.csv",
}


def read_run_config(path):
    path = Path(path)
    return validate_with(
        RunConfigSerializer,
        load_yaml(path),
        source=str(path),
        context={"base_dir": path.parent},
    )


def embedding_silhouette(embedding, labels):
    """Silhouette of the embedding under the predicted labels; -1 when undefined."""
    n_labels = np.unique(labels).size
    if not 2 <= n_labels <= len(labels) - 1:
        return -1.0
    return float(silhouette_score(embedding, labels))


class PipelineService:
    """
    Orchestrates the clustering commands: single runs, the filter parameter
    sweep and the ablation study.
    """

    def __init__(self, config, max_workers=None):
        """
        Args:
            config: RunConfig
            max_workers: parallel sweep points / ablation runs (default BTGF_MAX_WORKERS)
        """
        self.config = config
        self.max_workers = max(1, int(max_workers or settings.BTGF["MAX_WORKERS"]))
        self._graph = None

    @property
    def graph(self):
        if self._graph is None:
            if self.config.dataset is not None:
                self._graph = load_dataset(self.config.dataset, max_workers=self.max_workers)
            else:
                self._graph = generate_sbm(self.config.sbm)
        return self._graph

    @property
    def n_clusters(self):
        return self.graph.metadata.get("c") or self.graph.num_classes

    def path(self, name):
        return Path(self.config.output_dir) / ARTIFACT_NAMES[name]

    def train(self, train_config, trainer_workers=None):
        trainer = ClusteringTrainer(train_config, max_workers=trainer_workers or self.max_workers)
        return trainer.train(self.graph, n_clusters=self.n_clusters)

    def evaluate(self, result):
        if self.graph.labels is None:
            return None
        return evaluate(result.labels, self.graph.labels)

    def write_artifacts(self, result, evaluation):
        artifacts = {}
        if evaluation is not None:
            artifacts["metrics"] = export_metrics(evaluation, self.path("metrics"))
        else:
            logger.warning(f"{self.graph} has no labels; skipping {ARTIFACT_NAMES['metrics']}")
        artifacts["losses"] = export_losses(result.history, self.path("losses"))
        trace_bounds(result.history, self.path("bounds"))
        artifacts["bounds"] = self.path("bounds")
        artifacts["embeddings"] = export_embeddings(result.embedding, self.path("embeddings"))
        artifacts["labels"] = export_labels(result.labels, self.path("labels"))
        artifacts["checkpoint"] = save_checkpoint(result.state, self.path("checkpoint"))
        return artifacts

    def run(self):
        """
        Train once with the configured settings and write every artifact.

        Returns:
            RunOutcome
        """
        result = self.train(self.config.train)
        evaluation = self.evaluate(result)
        if evaluation is not None:
            logger.info(f"{self.graph}: {evaluation}")
        return RunOutcome(result=result, evaluation=evaluation, artifacts=self.write_artifacts(result, evaluation))

    def sweep_configs(self):
        grid = settings.BTGF_SWEEP_GRID
        base = self.config.train
        return [
            base.with_changes(filter=replace(base.filter, kind=FilterKind.LEARNED, k=k, gamma=gamma))
            for k, gamma in product(grid["FILTER_ORDERS"], grid["GAMMAS"])
        ]

    def _sweep_point(self, train_config):
        result = self.train(train_config, trainer_workers=1)
        if self.graph.labels is not None:
            acc, _ = hungarian_accuracy(result.labels, self.graph.labels)
            point = SweepPoint(
                k=train_config.filter.k,
                gamma=train_config.filter.gamma,
                criterion=Criterion.ACCURACY,
                score=acc,
                acc=acc,
                nmi=nmi(result.labels, self.graph.labels),
            )
        else:
            point = SweepPoint(
                k=train_config.filter.k,
                gamma=train_config.filter.gamma,
                criterion=Criterion.SILHOUETTE,
                score=embedding_silhouette(result.embedding, result.labels),
            )
        logger.info(f"sweep k={point.k} gamma={point.gamma:g}: {point.criterion}={point.score:.4f}")
        return point, result

    def sweep(self):
        """
        Train the learned filter over the (k, gamma) grid, select the best point
        by accuracy (or silhouette without labels) and write its artifacts.

        Ties go to the earliest grid point.

        Returns:
            RunOutcome with the selected run and every sweep point
        """
        logger.info(f"Sweeping the learned filter on {self.graph}")
        configs = self.sweep_configs()
        with ThreadPoolExecutor(max_workers=min(self.max_workers, len(configs))) as pool:
            outcomes = list(pool.map(self._sweep_point, configs))

        points = [point for point, _ in outcomes]
        best = int(np.argmax([point.score for point in points]))
        write_table(self.path("sweep"), SWEEP_CSV_HEADER, (point.as_row() for point in points))

        selected_point, result = outcomes[best]
        logger.info(f"Selected k={selected_point.k} gamma={selected_point.gamma:g} ({selected_point.criterion}={selected_point.score:.4f})")
        evaluation = self.evaluate(result)
        artifacts = self.write_artifacts(result, evaluation)
        artifacts["sweep"] = self.path("sweep")
        return RunOutcome(result=result, evaluation=evaluation, artifacts=artifacts, sweep=points)

    def _ablation_run(self, job):
        variant, seed = job
        train_config = variant_config(self.config.train, variant).with_changes(seed=seed)
        result = self.train(train_config, trainer_workers=1)
        return variant, seed, evaluate(result.labels, self.graph.labels), result.history

    def ablate(self, repeats=1):
        """
        Compare the four filter variants and the three loss-term ablations.

        Metrics are averaged over seeds seed..seed+repeats-1. Writes ablation.csv
        and lfd_curves.csv (feature decorrelation per epoch of the filter
        variants, first seed).

        Returns:
            list: AblationRow per variant, in AblationVariant order
        """
        if self.graph.labels is None:
            raise ConfigurationError(f"ablation needs a labeled dataset; {self.graph} has no labels")
        if repeats < 1:
            raise ConfigurationError(f"repeats must be >= 1, got {repeats}")

        seeds = [self.config.seed + offset for offset in range(repeats)]
        jobs = list(product(AblationVariant.values, seeds))
        with ThreadPoolExecutor(max_workers=min(self.max_workers, len(jobs))) as pool:
            runs = list(pool.map(self._ablation_run, jobs))

        rows = []
        curves = []
        for variant in AblationVariant.values:
            evaluations = [evaluation for v, _, evaluation, _ in runs if v == variant]
            rows.append(AblationRow(
                variant=variant,
                **{name: float(np.mean([getattr(e, name) for e in evaluations])) for name in ("acc", "f1", "nmi", "ari")},
            ))
            if variant in FILTER_VARIANTS:
                history = next(h for v, seed, _, h in runs if v == variant and seed == seeds[0])
                curves.extend((report.epoch, variant, report.l_fd) for report in history)
            logger.info(f"ablation {variant}: ACC={rows[-1].acc:.4f} NMI={rows[-1].nmi:.4f}")

        write_table(self.path("ablation"), ABLATION_CSV_HEADER, (row.as_row() for row in rows))
        write_table(self.path("lfd_curves"), LFD_CURVE_CSV_HEADER, curves)
        return rows
