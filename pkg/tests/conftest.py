from collections.abc import Callable

import numpy as np
import pytest

from datasets.services import generate_sbm
from datasets.structures import SbmConfig
from graphs.structures import MultiRelationalGraph

from tests.utils import random_adjacency, sbm_run_config, write_yaml


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def sbm_config() -> SbmConfig:
    """3 blocks x 50 nodes, V=2, intra 0.5/0.4, inter 0.02, f=20, separation 5, noise 1."""
    return SbmConfig()


@pytest.fixture
def sbm_graph(sbm_config: SbmConfig) -> MultiRelationalGraph:
    return generate_sbm(sbm_config)


@pytest.fixture
def small_sbm_graph() -> MultiRelationalGraph:
    return generate_sbm(SbmConfig(blocks=(15, 15, 15), features=9, seed=7))


@pytest.fixture
def small_graph(rng: np.random.Generator) -> MultiRelationalGraph:
    n, f = 12, 4
    return MultiRelationalGraph(
        adjacency=(random_adjacency(rng, n), random_adjacency(rng, n)),
        attributes=rng.standard_normal((n, f)),
        labels=np.arange(n) % 2,
        name="small",
    )


@pytest.fixture
def run_config_factory(tmp_path) -> Callable[..., str]:
    def create_config(**overrides) -> str:
        config = sbm_run_config(output_dir=str(tmp_path / "out"), **overrides)
        return write_yaml(tmp_path / "run.yaml", config)

    return create_config
