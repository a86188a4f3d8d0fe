import numpy as np
import pytest

from core.exceptions import ConfigurationError, DatasetError
from datasets.services import load_dataset, read_edge_list

from tests.utils import dataset_name, write_yaml


@pytest.fixture
def dataset_factory(tmp_path):
    def create_dataset(edges=("0 1",), attributes="1,0\n0,1\n", labels="0\n1\n", **manifest):
        name = dataset_name()
        (tmp_path / "edges.txt").write_text("\n".join(edges) + "\n")
        (tmp_path / "attributes.csv").write_text(attributes)
        data = {"name": name, "n": 2, "V": 1, "c": 2, "relations": ["edges.txt"], "attributes": "attributes.csv"}
        if labels is not None:
            (tmp_path / "labels.txt").write_text(labels)
            data["labels"] = "labels.txt"
        data.update(manifest)
        return write_yaml(tmp_path / f"{name}.yaml", data)

    return create_dataset


def test__single_edge__symmetric_adjacency(dataset_factory):
    graph = load_dataset(dataset_factory())
    np.testing.assert_array_equal(graph.adjacency[0], [[0, 1], [1, 0]])
    np.testing.assert_array_equal(graph.attributes, [[1, 0], [0, 1]])
    np.testing.assert_array_equal(graph.labels, [0, 1])


def test__duplicate_edges__accumulate_weight(dataset_factory):
    graph = load_dataset(dataset_factory(edges=("0 1", "0 1")))
    assert graph.adjacency[0][0, 1] == graph.adjacency[0][1, 0] == 2.0


def test__weighted_edges_and_comments__parsed(tmp_path):
    path = tmp_path / "edges.txt"
    path.write_text("# weighted\n0 2 1.5\n\n1 1 3\n")
    adjacency = read_edge_list(path, 3)
    assert adjacency[0, 2] == adjacency[2, 0] == 1.5
    assert adjacency[1, 1] == 3.0


def test__node_out_of_range__reports_line(dataset_factory):
    with pytest.raises(DatasetError, match=r"edges.txt:2: node 5 out of range"):
        load_dataset(dataset_factory(edges=("0 1", "1 5")))


def test__malformed_edge__reports_line(dataset_factory):
    with pytest.raises(DatasetError, match=r"edges.txt:1"):
        load_dataset(dataset_factory(edges=("0 1 2 3",)))


def test__attribute_row_count_mismatch__raises_dataset_error(dataset_factory):
    with pytest.raises(DatasetError, match="expected 2 attribute rows, found 1"):
        load_dataset(dataset_factory(attributes="1,0\n"))


def test__ragged_attribute_row__reports_line(dataset_factory):
    with pytest.raises(DatasetError, match=r"attributes.csv:2"):
        load_dataset(dataset_factory(attributes="1,0\n0\n"))


def test__label_outside_class_range__reports_line(dataset_factory):
    with pytest.raises(DatasetError, match=r"labels.txt:2"):
        load_dataset(dataset_factory(labels="0\n2\n"))


def test__unlabeled_manifest__graph_without_labels(dataset_factory):
    graph = load_dataset(dataset_factory(labels=None))
    assert graph.labels is None


def test__missing_relation_file__names_path(dataset_factory):
    with pytest.raises(DatasetError, match="missing.txt"):
        load_dataset(dataset_factory(relations=["missing.txt"]))


def test__missing_manifest__names_path(tmp_path):
    with pytest.raises(DatasetError, match="nowhere.yaml"):
        load_dataset(tmp_path / "nowhere.yaml")


def test__view_count_mismatch__raises_configuration_error(dataset_factory):
    with pytest.raises(ConfigurationError, match="V=2"):
        load_dataset(dataset_factory(V=2))


def test__acm_shaped_manifest__declares_published_statistics(tmp_path):
    from datasets.services import read_manifest

    path = write_yaml(tmp_path / "acm.yaml", {
        "name": "acm", "n": 3025, "V": 2, "c": 3, "relations": ["pap.edges", "psp.edges"],
        "attributes": "features.csv", "labels": "labels.txt",
    })
    manifest = read_manifest(path)
    assert (manifest.n, manifest.V, manifest.c) == (3025, 2, 3)
    assert manifest.relations[0] == tmp_path / "pap.edges"
