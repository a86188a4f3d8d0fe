from itertools import combinations, permutations

import numpy as np
import pytest

from core.exceptions import InputError, ShapeError
from evaluation.services import ari, evaluate, hungarian_accuracy, macro_f1, nmi


def brute_force_accuracy(pred, truth):
    size = max(pred.max(), truth.max()) + 1
    return max(np.mean(np.array(perm)[pred] == truth) for perm in permutations(range(size)))


def pair_count_ari(pred, truth):
    counts = {"same_both": 0, "same_pred": 0, "same_truth": 0, "different": 0}
    for i, j in combinations(range(len(pred)), 2):
        same_pred, same_truth = pred[i] == pred[j], truth[i] == truth[j]
        if same_pred and same_truth:
            counts["same_both"] += 1
        elif same_pred:
            counts["same_pred"] += 1
        elif same_truth:
            counts["same_truth"] += 1
        else:
            counts["different"] += 1
    a, b, c, d = counts["same_both"], counts["same_pred"], counts["same_truth"], counts["different"]
    denominator = (a + b) * (b + d) + (a + c) * (c + d)
    return None if denominator == 0 else 2.0 * (a * d - b * c) / denominator


def test__pure_relabeling__perfect_accuracy():
    acc, mapping = hungarian_accuracy([1, 1, 0, 0], [0, 0, 1, 1])
    assert acc == 1.0
    assert mapping == (1, 0)


def test__independent_labeling__half_accuracy():
    assert hungarian_accuracy([0, 1, 0, 1], [0, 0, 1, 1])[0] == 0.5


def test__identical_labeling__perfect_scores():
    labels = np.array([0, 1, 2, 2, 1, 0])
    evaluation = evaluate(labels, labels)
    assert evaluation.as_row() == pytest.approx((1.0, 1.0, 1.0, 1.0))


def test__length_mismatch__raises_shape_error():
    with pytest.raises(ShapeError):
        hungarian_accuracy([0, 1], [0, 1, 1])


def test__empty_labeling__raises_input_error():
    with pytest.raises(InputError):
        hungarian_accuracy([], [])


def test__random_labelings__accuracy_matches_permutation_search():
    rng = np.random.default_rng(7)
    for _ in range(200):
        n = int(rng.integers(1, 13))
        c = int(rng.integers(1, 5))
        pred, truth = rng.integers(0, c, n), rng.integers(0, c, n)
        assert hungarian_accuracy(pred, truth)[0] == pytest.approx(brute_force_accuracy(pred, truth))


def test__stored_mapping__reproduces_accuracy(rng):
    pred, truth = rng.integers(0, 4, 30), rng.integers(0, 4, 30)
    acc, mapping = hungarian_accuracy(pred, truth)
    assert acc == pytest.approx(np.mean(np.array(mapping)[pred] == truth))


def test__constant_prediction__macro_f1_is_one_third():
    pred, truth = [0, 0, 0, 0], [0, 0, 1, 1]
    _, mapping = hungarian_accuracy(pred, truth)
    assert macro_f1(pred, truth, mapping) == pytest.approx(1.0 / 3.0)


def test__relabeled_prediction__macro_f1_unchanged(rng):
    truth = rng.integers(0, 3, 40)
    pred = np.where(rng.random(40) < 0.2, rng.integers(0, 3, 40), truth)
    relabeled = np.array([2, 0, 1])[pred]
    first = macro_f1(pred, truth, hungarian_accuracy(pred, truth)[1])
    second = macro_f1(relabeled, truth, hungarian_accuracy(relabeled, truth)[1])
    assert first == pytest.approx(second)


def test__relabeled_truth__nmi_is_one():
    truth = np.array([0, 0, 1, 1, 2, 2])
    assert nmi(np.array([2, 2, 0, 0, 1, 1]), truth) == pytest.approx(1.0, abs=1e-9)


def test__independent_partitions__nmi_is_zero():
    assert nmi([0, 1, 0, 1], [0, 0, 1, 1]) == pytest.approx(0.0, abs=1e-9)


def test__single_cluster_against_split__nmi_is_zero():
    assert nmi([0, 0, 0, 0], [0, 0, 1, 1]) == pytest.approx(0.0, abs=1e-9)


def test__hand_counted_pairs__ari_is_minus_half():
    assert ari([0, 1, 0, 1], [0, 0, 1, 1]) == pytest.approx(-0.5)


def test__random_labelings__ari_matches_pair_counts():
    rng = np.random.default_rng(3)
    for _ in range(100):
        n = int(rng.integers(2, 13))
        pred, truth = rng.integers(0, 4, n), rng.integers(0, 4, n)
        expected = pair_count_ari(pred, truth)
        if expected is not None:
            assert ari(pred, truth) == pytest.approx(expected)
            assert ari(truth, pred) == pytest.approx(expected)


def test__random_labelings__ari_averages_to_zero():
    rng = np.random.default_rng(11)
    values = [ari(rng.integers(0, 3, 100), rng.integers(0, 3, 100)) for _ in range(1000)]
    assert abs(np.mean(values)) <= 0.02


def test__single_point__ari_raises_input_error():
    with pytest.raises(InputError):
        ari([0], [0])


def test__permuted_prediction__acc_and_nmi_invariant(rng):
    pred, truth = rng.integers(0, 3, 25), rng.integers(0, 3, 25)
    permuted = np.array([1, 2, 0])[pred]
    assert hungarian_accuracy(permuted, truth)[0] == pytest.approx(hungarian_accuracy(pred, truth)[0])
    assert nmi(permuted, truth) == pytest.approx(nmi(pred, truth))
