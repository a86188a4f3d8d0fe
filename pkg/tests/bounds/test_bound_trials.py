import numpy as np
import pytest

from bounds.services import (
    check_lower_bound,
    check_upper_bound,
    pair_bounds,
    norm_ratio_lower_bound,
    correlation_upper_bound,
    run_bound_trials,
    trace_bounds,
)
from bounds.structures import Construction
from clustering.services import ClusteringTrainer
from clustering.structures import TrainConfig
from core.exceptions import ConfigurationError, DomainError, InputError

LAMBDA = 0.0051


def test__equal_norms__lower_bound_is_dimension():
    assert norm_ratio_lower_bound([2.0, 2.0, 2.0], [3.0, 3.0, 3.0]) == pytest.approx(3.0)


def test__hand_computed__lower_bound():
    assert norm_ratio_lower_bound([1.0, 2.0], [1.0, 2.0]) == pytest.approx(1.0625)


def test__random_norms__lower_bound_at_most_dimension(rng):
    for _ in range(20):
        assert norm_ratio_lower_bound(rng.uniform(0.1, 5, 4), rng.uniform(0.1, 5, 4)) <= 4.0


def test__nonpositive_norm__raises_domain_error():
    with pytest.raises(DomainError):
        norm_ratio_lower_bound([1.0, 0.0], [1.0, 1.0])


def test__identity_correlation__upper_bound_is_dimension():
    assert correlation_upper_bound(np.eye(3), LAMBDA) == pytest.approx(3.0)


def test__unit_off_diagonals__hand_computed_upper_bound():
    assert correlation_upper_bound(np.array([[0.3, 1.0], [1.0, 0.7]]), LAMBDA) == pytest.approx(2.0102)


def test__mirrored_views__barlow_twins_above_lower_bound(rng):
    Xt = rng.standard_normal((20, 6))
    for _ in range(100):
        value, lower = check_lower_bound(Xt, -Xt, rng.standard_normal((6, 3)), LAMBDA)
        assert value >= lower - 1e-9


def test__equal_views__correlation_diagonal_in_unit_interval_and_below_upper_bound(rng):
    Xt = rng.standard_normal((20, 6))
    for _ in range(100):
        value, upper, diagonal = check_upper_bound(Xt, Xt, rng.standard_normal((6, 3)), LAMBDA)
        assert np.all(diagonal >= 0.0) and np.all(diagonal <= 1.0 + 1e-12)
        assert value <= upper + 1e-9


@pytest.mark.parametrize("construction", Construction.values)
def test__hundred_trials__both_bounds_hold(construction):
    lower, upper = run_bound_trials(100, seed=0, construction=construction)
    assert (lower.passed, upper.passed) == (100, 100)
    assert lower.min_gap >= 0.0
    assert upper.min_gap >= -1e-9


def test__zero_trials__raises_configuration_error():
    with pytest.raises(ConfigurationError):
        run_bound_trials(0)


def test__mirrored_embeddings__pair_bounds_respect_lower_bound(rng):
    Z = rng.standard_normal((15, 3))
    bounds = pair_bounds([Z, -Z], LAMBDA, {(0, 1): -1.0})
    assert len(bounds) == 1
    assert bounds[0].label == "0-1"
    assert bounds[0].l_fd >= bounds[0].lower - 1e-9


def test__training_history__one_record_per_epoch_and_pair(small_sbm_graph, tmp_path):
    result = ClusteringTrainer(TrainConfig(epochs=10, kmeans_restarts=2)).train(small_sbm_graph)
    path = tmp_path / "bounds.csv"
    trace = trace_bounds(result.history, path)
    assert trace.epochs == 10
    assert len(trace.records) == 10
    assert len(trace.averaged()) == 10
    lines = path.read_text().splitlines()
    assert lines[0] == "epoch,pair,l_fd,lower,upper,min_eig"
    assert len(lines) == 11


def test__empty_history__raises_input_error():
    with pytest.raises(InputError):
        trace_bounds([])
