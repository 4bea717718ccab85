import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ctxsumm.metrics import (
    dataset_score,
    f_measure,
    make_splits,
    random_baseline,
    video_score,
)

from conftest import make_manifest_video


def test_perfect_overlap():
    assert f_measure({1, 2, 3}, {1, 2, 3}, 10) == 1.0


def test_disjoint_sets():
    assert f_measure({1, 2}, {3, 4}, 10) == 0.0


def test_half_overlap():
    assert f_measure({1, 2, 3, 4}, {3, 4, 5, 6}, 10) == pytest.approx(0.5)


def test_empty_prediction_scores_zero():
    assert f_measure(set(), {1, 2}, 10) == 0.0
    assert f_measure({1, 2}, set(), 10) == 0.0


def test_out_of_range_rejected():
    with pytest.raises(ValueError):
        f_measure({11}, {1}, 10)


@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_f_measure_symmetry_and_range(data):
    total = data.draw(st.integers(min_value=1, max_value=50))
    s = data.draw(st.sets(st.integers(1, total), max_size=total))
    u = data.draw(st.sets(st.integers(1, total), max_size=total))
    f = f_measure(s, u, total)
    assert 0.0 <= f <= 1.0
    assert f == f_measure(u, s, total)
    if s and s == u:
        assert f == 1.0
    if f == 1.0:
        assert s == u and s


def test_video_score_modes():
    users = [{1, 2}, {1, 2, 3, 4}]
    pred = {1, 2}
    avg = video_score(pred, users, 10, "avg")
    mx = video_score(pred, users, 10, "max")
    assert mx == 1.0
    assert avg == pytest.approx((1.0 + f_measure(pred, users[1], 10)) / 2)
    single = video_score(pred, [users[0]], 10, "avg")
    assert single == video_score(pred, [users[0]], 10, "max") == 1.0


def test_video_score_empty_users_rejected():
    with pytest.raises(ValueError):
        video_score({1}, [], 10)


def test_dataset_score_top5():
    scores = [0.7, 0.6, 0.5, 0.4, 0.3, 0.2]
    assert dataset_score(scores, "top5") == pytest.approx(0.5)
    assert dataset_score([0.3, 0.2, 0.1], "top5") == pytest.approx(0.2)


def test_dataset_score_single_split_equals_avg():
    scores = [0.2, 0.4, 0.6]
    assert dataset_score(scores, "avg", splits=[[0, 1, 2]]) == pytest.approx(
        dataset_score(scores, "avg")
    )


def test_dataset_score_permutation_invariant_and_top5_dominates():
    rng = np.random.default_rng(1)
    for _ in range(20):
        scores = rng.uniform(size=int(rng.integers(1, 12))).tolist()
        shuffled = list(scores)
        rng.shuffle(shuffled)
        assert dataset_score(scores, "avg") == pytest.approx(dataset_score(shuffled, "avg"))
        assert dataset_score(scores, "top5") >= dataset_score(scores, "avg") - 1e-12


def test_make_splits_shapes():
    splits = make_splits([f"v{i}" for i in range(25)], 5, 0.2, seed=3)
    assert len(splits) == 5
    for s in splits:
        assert len(s.test) == 5
        assert len(s.train) == 20
        assert set(s.train) | set(s.test) == {f"v{i}" for i in range(25)}
        assert not set(s.train) & set(s.test)


def test_make_splits_deterministic():
    a = make_splits(list("abcdefgh"), 3, 0.25, seed=9)
    b = make_splits(list("abcdefgh"), 3, 0.25, seed=9)
    assert a == b


def test_make_splits_fraction_bounds():
    with pytest.raises(ValueError):
        make_splits(list("abc"), 1, 1.0)
    with pytest.raises(ValueError):
        make_splits(list("abc"), 1, 0.0)


def test_make_splits_empty_test_rejected():
    with pytest.raises(ValueError):
        make_splits(list("abcdefghij"), 1, 0.01)


def test_random_baseline_deterministic():
    video = make_manifest_video(
        total_frames=100, segment_length=10,
        user_summaries=[set(range(1, 16)), set(range(40, 60))],
    )
    a = random_baseline(video, repeats=5, seed=7)
    b = random_baseline(video, repeats=5, seed=7)
    assert a == b


def test_random_baseline_respects_budget():
    from ctxsumm.summarize import evaluation_budget, knapsack_summary

    video = make_manifest_video(total_frames=60, segment_length=7,
                                user_summaries=[set(range(1, 10))])
    budget = evaluation_budget(60)
    rng = np.random.default_rng(0)
    for _ in range(20):
        sel = knapsack_summary(rng.uniform(size=60), video.segments, budget)
        assert len(sel) <= budget


def test_random_baseline_monte_carlo_stability():
    rng = np.random.default_rng(0)
    users = [set(rng.choice(np.arange(1, 3001), size=450, replace=False).tolist())
             for _ in range(3)]
    video = make_manifest_video(total_frames=3000, segment_length=50,
                                user_summaries=users)
    a = random_baseline(video, repeats=100, seed=1)
    b = random_baseline(video, repeats=100, seed=2)
    assert abs(a - b) < 0.02
