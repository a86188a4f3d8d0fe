import numpy as np
import pytest

from core.exceptions import ParameterError, ShapeError
from filtering.services import ViewFilterService, apply_filter, make_filter, solve_filter_naive
from filtering.structures import FilterConfig, FilterKind, FilterSolver
from graphs.services import laplacian, low_pass_filter, mix_pass_filter, normalize_adjacency

from tests.utils import random_adjacency


def test__identity_filter__leaves_attributes_unchanged(rng):
    X = rng.standard_normal((5, 3))
    np.testing.assert_array_equal(apply_filter(np.eye(5), X), X)


def test__zero_filter__returns_zeros(rng):
    np.testing.assert_array_equal(apply_filter(np.zeros((4, 4)), rng.standard_normal((4, 2))), np.zeros((4, 2)))


def test__two_node_filter__returns_filter_itself():
    K = np.array([[0.75, 0.25], [0.25, 0.75]])
    np.testing.assert_allclose(apply_filter(K, np.eye(2)), K)


def test__filter_attribute_mismatch__raises_shape_error(rng):
    with pytest.raises(ShapeError):
        apply_filter(np.eye(3), rng.standard_normal((4, 2)))


def test__kind_identity__returns_identity(rng):
    adj = random_adjacency(rng, 6)
    cfg = FilterConfig(kind=FilterKind.IDENTITY)
    filters = make_filter(adj, rng.standard_normal((6, 2)), cfg)
    assert len(filters) == 1
    assert filters.config == cfg
    np.testing.assert_array_equal(filters[0], np.eye(6))


def test__kind_low_pass__returns_squared_low_pass(rng):
    adj = random_adjacency(rng, 6)
    L = laplacian(normalize_adjacency(adj))
    K = make_filter(adj, rng.standard_normal((6, 2)), FilterConfig(kind=FilterKind.LOW_PASS, k=2))[0]
    np.testing.assert_allclose(K, low_pass_filter(L, 2))


def test__kind_mix_pass__returns_mix_pass(rng):
    adj = random_adjacency(rng, 6)
    L = laplacian(normalize_adjacency(adj))
    K = make_filter(adj, rng.standard_normal((6, 2)), FilterConfig(kind=FilterKind.MIX_PASS))[0]
    np.testing.assert_allclose(K, mix_pass_filter(L))


@pytest.mark.parametrize("solver", FilterSolver.values)
def test__kind_learned__matches_naive_solve(solver, rng):
    adj = random_adjacency(rng, 15)
    X = rng.standard_normal((15, 4))
    cfg = FilterConfig(kind=FilterKind.LEARNED, gamma=10.0, k=2, solver=solver)
    expected = solve_filter_naive(X, laplacian(normalize_adjacency(adj)), cfg)
    np.testing.assert_allclose(make_filter(adj, X, cfg)[0], expected, atol=1e-8)


@pytest.mark.parametrize(
    "options",
    [{"kind": "band_pass"}, {"solver": "qr"}, {"gamma": 0.0}, {"gamma": -1.0}, {"k": 0}],
)
def test__invalid_config__raises_parameter_error(options):
    with pytest.raises(ParameterError):
        FilterConfig(**options)


@pytest.mark.parametrize("max_workers", [1, 4])
def test__view_service__builds_one_filter_per_view(max_workers, small_graph):
    service = ViewFilterService(FilterConfig(gamma=1.0), max_workers=max_workers)
    filters = service.build(small_graph)
    assert len(filters) == small_graph.V
    for K, adj in zip(filters.matrices, small_graph.adjacency):
        np.testing.assert_allclose(K, make_filter(adj, small_graph.attributes, filters.config)[0])

    smoothed = service.smooth(small_graph, filters)
    np.testing.assert_allclose(smoothed[1], filters[1] @ small_graph.attributes)


def test__row_normalization__smooths_unit_rows(small_graph):
    service = ViewFilterService(FilterConfig(kind=FilterKind.IDENTITY, normalize_rows=True))
    smoothed = service.smooth(small_graph)
    np.testing.assert_allclose(np.linalg.norm(smoothed[0], axis=1), 1.0)
