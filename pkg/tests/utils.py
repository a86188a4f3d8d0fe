import numpy as np
import yaml
from faker import Faker

faker = Faker()


def dataset_name() -> str:
    return faker.unique.slug().replace("-", "_")


def write_yaml(path, data) -> str:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(yaml.safe_dump(data, sort_keys=False))
    return str(path)


def random_adjacency(rng: np.random.Generator, n: int, density: float = 0.3) -> np.ndarray:
    upper = np.triu(rng.random((n, n)) < density, k=1)
    return (upper | upper.T).astype(np.float64)


def random_weighted_adjacency(rng: np.random.Generator, n: int, density: float = 0.4) -> np.ndarray:
    weights = np.triu(rng.uniform(0.5, 3.0, size=(n, n)) * (rng.random((n, n)) < density), k=1)
    return weights + weights.T


def random_laplacian(rng: np.random.Generator, n: int, density: float = 0.3) -> np.ndarray:
    from graphs.services import laplacian, normalize_adjacency

    return laplacian(normalize_adjacency(random_adjacency(rng, n, density)))


def orthonormal_columns(rng: np.random.Generator, n: int, d: int) -> np.ndarray:
    Q, _ = np.linalg.qr(rng.standard_normal((n, d)))
    return Q


def sbm_run_config(**overrides) -> dict:
    config = {
        "seed": 0,
        "sbm": {
            "blocks": [20, 20, 20],
            "intra": [0.5, 0.4],
            "inter": [0.02, 0.02],
            "features": 12,
            "separation": 5.0,
            "noise": 1.0,
            "seed": 3,
        },
        "train": {"epochs": 30, "kmeans_restarts": 3},
        "filter": {"kind": "learned", "gamma": 10.0, "order": 2},
    }
    config.update(overrides)
    return config
