import numpy as np
import pytest

from clustering.autoencoder import TrainingBatch, decode, encode, gradients, total_objective
from clustering.structures import LossTerm, ModelState
from core.exceptions import ShapeError
from losses.services import soft_assignment, target_distribution

from tests.utils import orthonormal_columns

LAMBDA = 0.0051


def make_instance(rng, n=8, f=5, d=3, V=2, c=2, loss_terms=frozenset(LossTerm.values)):
    views = tuple(rng.standard_normal((n, f)) for _ in range(V))
    state = ModelState(
        W=rng.standard_normal((f, d)) / np.sqrt(f),
        W_de=rng.standard_normal((d, f)) / np.sqrt(d),
        centers=rng.standard_normal((c, V * d)),
    )
    # target from an unrelated embedding so that P != Q
    target = target_distribution(soft_assignment(rng.standard_normal((n, V * d)), state.centers))
    return state, TrainingBatch(views=views, target=target, loss_terms=frozenset(loss_terms), lam=LAMBDA)


def numerical_gradient(state, batch, name, step=1e-5):
    param = getattr(state, name)
    grad = np.zeros_like(param)
    for index in np.ndindex(param.shape):
        original = param[index]
        param[index] = original + step
        upper = total_objective(state, batch)
        param[index] = original - step
        lower = total_objective(state, batch)
        param[index] = original
        grad[index] = (upper - lower) / (2.0 * step)
    return grad


def test__zero_encoder__zero_embedding(rng):
    np.testing.assert_array_equal(encode(rng.standard_normal((4, 3)), np.zeros((3, 2))), np.zeros((4, 2)))


def test__identity_input__embedding_is_encoder(rng):
    W = rng.standard_normal((4, 2))
    np.testing.assert_allclose(encode(np.eye(4), W), W)


def test__identity_encoder__embedding_is_input(rng):
    Xt = rng.standard_normal((5, 3))
    np.testing.assert_allclose(encode(Xt, np.eye(3)), Xt)


def test__zero_embedding__zero_reconstruction(rng):
    np.testing.assert_array_equal(decode(np.zeros((3, 2)), rng.standard_normal((2, 4))), np.zeros((3, 4)))


def test__orthonormal_encoder_transposed__reconstructs_column_space(rng):
    W = orthonormal_columns(rng, 5, 2)
    Xt = rng.standard_normal((6, 2)) @ W.T
    reconstruction = decode(encode(Xt, W), W.T)
    assert reconstruction.shape == Xt.shape
    np.testing.assert_allclose(reconstruction, Xt, atol=1e-12)


def test__encoder_width_mismatch__raises_shape_error(rng):
    with pytest.raises(ShapeError):
        encode(rng.standard_normal((4, 3)), np.zeros((2, 2)))


@pytest.mark.parametrize("seed", [0, 1, 2])
def test__all_terms__analytic_gradients_match_finite_differences(seed):
    rng = np.random.default_rng(seed)
    state, batch = make_instance(rng)
    analytic = gradients(state, batch).as_dict()
    for name in ("W", "W_de", "centers"):
        numeric = numerical_gradient(state, batch, name)
        error = np.max(np.abs(analytic[name] - numeric)) / max(np.max(np.abs(numeric)), 1e-8)
        assert error < 1e-4, f"{name}: relative error {error:.2e}"


@pytest.mark.parametrize("term", LossTerm.values)
def test__single_term__analytic_gradients_match_finite_differences(term, rng):
    state, batch = make_instance(rng, V=3, loss_terms={term})
    analytic = gradients(state, batch).as_dict()
    for name in ("W", "W_de", "centers"):
        numeric = numerical_gradient(state, batch, name)
        np.testing.assert_allclose(analytic[name], numeric, atol=1e-6 * max(1.0, np.max(np.abs(numeric))))


def test__target_equals_assignment__center_gradient_vanishes(rng):
    state, batch = make_instance(rng, loss_terms={LossTerm.CLUSTERING})
    Z_cat = np.hstack([encode(Xt, state.W) for Xt in batch.views])
    matched = TrainingBatch(
        views=batch.views,
        target=soft_assignment(Z_cat, state.centers),
        loss_terms=batch.loss_terms,
        lam=LAMBDA,
    )
    grads = gradients(state, matched)
    np.testing.assert_allclose(grads.centers, 0.0, atol=1e-12)
    assert grads.l_clu == pytest.approx(0.0, abs=1e-12)


def test__exact_reconstruction__decoder_gradient_vanishes(rng):
    # inputs in the column space of an orthonormal encoder are reproduced by its transpose
    state, batch = make_instance(rng, V=1, loss_terms={LossTerm.RECONSTRUCTION})
    W = orthonormal_columns(rng, 5, 3)
    views = (rng.standard_normal((8, 3)) @ W.T,)
    state.W, state.W_de = W, W.T.copy()
    grads = gradients(state, TrainingBatch(views=views, target=batch.target, loss_terms=batch.loss_terms, lam=LAMBDA))
    assert grads.l_msce == pytest.approx(0.0, abs=1e-20)
    np.testing.assert_allclose(grads.W_de, 0.0, atol=1e-10)


def test__single_view__feature_decorrelation_is_skipped(rng):
    state, batch = make_instance(rng, V=1)
    assert not batch.uses_feature_decorrelation
    assert gradients(state, batch).l_fd == 0.0


def test__shared_encoder__changing_weights_changes_every_view(rng):
    state, batch = make_instance(rng, V=3)
    before = [encode(Xt, state.W) for Xt in batch.views]
    state.W = state.W + 0.1
    after = [encode(Xt, state.W) for Xt in batch.views]
    assert all(not np.allclose(b, a) for b, a in zip(before, after))
