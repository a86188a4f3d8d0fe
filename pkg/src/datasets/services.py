"""
Reading, generating and writing multi-relational datasets.

On-disk layout (all 0-indexed):
- edge lists: one "src dst [weight]" per line; blank lines and lines
  starting with '#' are skipped. Every line adds its weight to both
  (src, dst) and (dst, src), so repeated lines accumulate.
- attributes: dense CSV, n rows of f values.
- labels: one integer class id per line.
"""

import csv
import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np
import yaml

from core.configs import load_yaml, validate_with
from core.exceptions import DatasetError
from graphs.structures import MultiRelationalGraph

from .exports import FLOAT_FORMAT, export_labels, format_value
from .serializers import ManifestSerializer

logger = logging.getLogger(__name__)


def _open(path):
    try:
        return Path(path).open(newline="")
    except FileNotFoundError as e:
        raise DatasetError(path, "file not found") from e
    except OSError as e:
        raise DatasetError(path, f"cannot read file: {e.strerror or e}") from e


def _data_lines(handle):
    for lineno, line in enumerate(handle, start=1):
        line = line.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def read_manifest(path):
    path = Path(path)
    data = load_yaml(path)
    return validate_with(
        ManifestSerializer,
        data,
        source=str(path),
        context={"base_dir": path.parent, "path": path},
    )


def read_edge_list(path, n):
    """
    Returns:
        np.ndarray: n x n symmetric weighted adjacency
    """
    adjacency = np.zeros((n, n))
    with _open(path) as handle:
        for lineno, line in _data_lines(handle):
            parts = line.split()
            if len(parts) not in (2, 3):
                raise DatasetError(path, f"expected 'src dst [weight]', got '{line}'", line=lineno)
            try:
                src, dst = int(parts[0]), int(parts[1])
                weight = float(parts[2]) if len(parts) == 3 else 1.0
            except ValueError as e:
                raise DatasetError(path, f"malformed edge '{line}'", line=lineno) from e
            for node in (src, dst):
                if not 0 <= node < n:
                    raise DatasetError(path, f"node {node} out of range [0, {n})", line=lineno)
            if not np.isfinite(weight) or weight < 0:
                raise DatasetError(path, f"edge weight must be finite and nonnegative, got {weight}", line=lineno)
            adjacency[src, dst] += weight
            if src != dst:
                adjacency[dst, src] += weight
    return adjacency


def read_attributes(path, n):
    rows = []
    with _open(path) as handle:
        for lineno, row in enumerate(csv.reader(handle), start=1):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            try:
                values = [float(value) for value in row]
            except ValueError as e:
                raise DatasetError(path, f"non-numeric attribute value in {row}", line=lineno) from e
            if rows and len(values) != len(rows[0]):
                raise DatasetError(path, f"expected {len(rows[0])} columns, found {len(values)}", line=lineno)
            rows.append(values)
    if len(rows) != n:
        raise DatasetError(path, f"expected {n} attribute rows, found {len(rows)}")
    return np.array(rows, dtype=np.float64)


def read_labels(path, n=None, c=None):
    labels = []
    with _open(path) as handle:
        for lineno, line in _data_lines(handle):
            try:
                label = int(line)
            except ValueError as e:
                raise DatasetError(path, f"expected an integer label, got '{line}'", line=lineno) from e
            if label < 0 or (c is not None and label >= c):
                bound = f"[0, {c})" if c is not None else "nonnegative ids"
                raise DatasetError(path, f"label {label} outside {bound}", line=lineno)
            labels.append(label)
    if n is not None and len(labels) != n:
        raise DatasetError(path, f"expected {n} labels, found {len(labels)}")
    return np.array(labels, dtype=np.int64)


def load_dataset(manifest_path, max_workers=1):
    """
    Load a dataset described by a YAML manifest.

    Args:
        manifest_path: manifest file (name, n, V, c, relations, attributes, labels)
        max_workers: relation files read concurrently

    Returns:
        MultiRelationalGraph
    """
    manifest = read_manifest(manifest_path)
    for path in manifest.files():
        if not Path(path).is_file():
            raise DatasetError(path, "file not found")

    if max_workers > 1 and manifest.V > 1:
        with ThreadPoolExecutor(max_workers=min(max_workers, manifest.V)) as pool:
            adjacency = list(pool.map(lambda p: read_edge_list(p, manifest.n), manifest.relations))
    else:
        adjacency = [read_edge_list(p, manifest.n) for p in manifest.relations]
    attributes = read_attributes(manifest.attributes, manifest.n)
    labels = read_labels(manifest.labels, manifest.n, manifest.c) if manifest.labels else None

    graph = MultiRelationalGraph(
        adjacency=tuple(adjacency),
        attributes=attributes,
        labels=labels,
        name=manifest.name,
        metadata={"manifest": str(manifest.path), "c": manifest.c},
    )
    logger.info(f"Loaded {graph} from {manifest.path}")
    return graph


def generate_sbm(cfg):
    """
    Sample a planted-partition multi-relational graph.

    Same SbmConfig (seed included) gives the same graph.

    Returns:
        MultiRelationalGraph with labels = block ids
    """
    rng = np.random.default_rng(cfg.seed)
    labels = cfg.block_labels()
    same_block = labels[:, None] == labels[None, :]

    adjacency = []
    for intra, inter in zip(cfg.intra, cfg.inter):
        probabilities = np.where(same_block, intra, inter)
        upper = np.triu(rng.random((cfg.n, cfg.n)) < probabilities, k=1)
        adjacency.append((upper | upper.T).astype(np.float64))

    attributes = cfg.block_means()[labels] + cfg.noise * rng.standard_normal((cfg.n, cfg.features))
    graph = MultiRelationalGraph(
        adjacency=tuple(adjacency),
        attributes=attributes,
        labels=labels,
        name="sbm",
        metadata={"seed": cfg.seed, "c": len(cfg.blocks)},
    )
    logger.info(f"Generated {graph} with blocks {list(cfg.blocks)}")
    return graph


def _write_edge_list(adjacency, path):
    rows, cols = np.nonzero(np.triu(adjacency))
    with path.open("w") as handle:
        for i, j in zip(rows, cols):
            handle.write(f"{i} {j} {FLOAT_FORMAT % adjacency[i, j]}\n")


def write_dataset(graph, directory, name=None):
    """
    Write a graph as manifest, edge lists, attribute CSV and (when labeled) label file.

    Only the upper triangle of each adjacency is written, which load_dataset
    mirrors back.

    Returns:
        Path: the manifest
    """
    directory = Path(directory)
    name = name or graph.name
    relation_files = [f"{name}_relation{v}.edges" for v in range(graph.V)]
    manifest = {
        "name": name,
        "n": graph.n,
        "V": graph.V,
        "relations": relation_files,
        "attributes": f"{name}_attributes.csv",
    }
    if graph.labels is not None:
        manifest["c"] = graph.num_classes
        manifest["labels"] = f"{name}_labels.txt"

    manifest_path = directory / f"{name}.yaml"
    try:
        directory.mkdir(parents=True, exist_ok=True)
        for adjacency, filename in zip(graph.adjacency, relation_files):
            _write_edge_list(adjacency, directory / filename)
        with (directory / manifest["attributes"]).open("w", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            for row in graph.attributes.tolist():
                writer.writerow([format_value(value) for value in row])
        with manifest_path.open("w") as handle:
            yaml.safe_dump(manifest, handle, sort_keys=False)
    except OSError as e:
        raise DatasetError(directory, f"cannot write dataset: {e.strerror or e}") from e
    if graph.labels is not None:
        export_labels(graph.labels, directory / manifest["labels"])

    logger.info(f"Wrote {graph} to {manifest_path}")
    return manifest_path
