"""
CSV artifacts written by the pipeline.

Floats are written with 17 significant digits so every value reads back
bit-exact.
"""

import csv
import logging
from pathlib import Path

import numpy as np

from bounds.structures import BOUND_CSV_HEADER
from core.exceptions import DatasetError
from evaluation.structures import METRIC_NAMES

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"
LOSS_CSV_HEADER = ("epoch", "l_fd", "l_msce", "l_clu", "total", "lower", "upper")


def format_value(value):
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        return FLOAT_FORMAT % value
    if isinstance(value, np.integer):
        return str(int(value))
    return str(value)


def write_table(path, header, rows):
    """
    Write a header line and rows as CSV.

    Returns:
        Path: the written file
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([format_value(value) for value in row])
    except OSError as e:
        raise DatasetError(path, f"cannot write file: {e.strerror or e}") from e
    logger.debug(f"Wrote {path}")
    return path


def export_embeddings(Z_cat, path):
    Z_cat = np.asarray(Z_cat, dtype=np.float64)
    header = [f"z{j}" for j in range(Z_cat.shape[1])]
    return write_table(path, header, Z_cat.tolist())


def export_metrics(evaluation, path):
    return write_table(path, METRIC_NAMES, [evaluation.as_row()])


def export_losses(history, path):
    rows = (
        (r.epoch, r.l_fd, r.l_msce, r.l_clu, r.total, r.lower_bound, r.upper_bound)
        for r in history
    )
    return write_table(path, LOSS_CSV_HEADER, rows)


def export_bounds(trace, path):
    return write_table(path, BOUND_CSV_HEADER, (record.as_row() for record in trace.records))


def export_labels(labels, path):
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("".join(f"{int(label)}\n" for label in labels))
    except OSError as e:
        raise DatasetError(path, f"cannot write file: {e.strerror or e}") from e
    return path
