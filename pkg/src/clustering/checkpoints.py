"""
ModelState checkpoints as versioned .npz archives.

Archive keys: format_version, W, W_de, centers, step, epoch and the Adam
buffers as moment1_<name> / moment2_<name> for every parameter.
"""

import logging
from pathlib import Path

import numpy as np

from core.exceptions import DatasetError

from .structures import PARAMETER_NAMES, ModelState

logger = logging.getLogger(__name__)

CHECKPOINT_FORMAT_VERSION = 1


def save_checkpoint(state, path):
    path = Path(path)
    arrays = {
        "format_version": np.array(CHECKPOINT_FORMAT_VERSION),
        "step": np.array(state.step),
        "epoch": np.array(state.epoch),
    }
    for name in PARAMETER_NAMES:
        first, second = state.moments[name]
        arrays[name] = getattr(state, name)
        arrays[f"moment1_{name}"] = first
        arrays[f"moment2_{name}"] = second
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("wb") as handle:
            np.savez(handle, **arrays)
    except OSError as e:
        raise DatasetError(path, f"cannot write checkpoint: {e.strerror or e}") from e
    logger.info(f"Saved checkpoint (epoch {state.epoch}) to {path}")
    return path


def load_checkpoint(path):
    """
    Read a ModelState written by save_checkpoint.

    No command resumes from it; it is the reader for inspecting a run's
    checkpoint.npz.
    """
    path = Path(path)
    try:
        with np.load(path) as archive:
            version = int(archive["format_version"])
            if version != CHECKPOINT_FORMAT_VERSION:
                raise DatasetError(path, f"unsupported checkpoint version {version}")
            params = {name: archive[name].astype(np.float64) for name in PARAMETER_NAMES}
            moments = {
                name: (archive[f"moment1_{name}"].astype(np.float64), archive[f"moment2_{name}"].astype(np.float64))
                for name in PARAMETER_NAMES
            }
            step, epoch = int(archive["step"]), int(archive["epoch"])
    except (OSError, KeyError, ValueError) as e:
        raise DatasetError(path, f"cannot read checkpoint: {e}") from e
    return ModelState(moments=moments, step=step, epoch=epoch, **params)
