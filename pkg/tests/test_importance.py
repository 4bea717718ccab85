import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ctxsumm.importance import (
    bias_and_interpolate,
    flat_scores,
    keypoints,
    select_keyframes,
)
from ctxsumm.types import KeyframeSet, PartitionSet


def parts(*lengths):
    starts = np.cumsum([1] + list(lengths[:-1]))
    return PartitionSet(sections=tuple(zip(starts.tolist(), lengths)))


def test_middle_plus_ends():
    kf = select_keyframes(parts(5), None, ("middle", "ends"))
    assert kf.per_partition == ((1, 3, 5),)


def test_single_sample_partition_collapses():
    kf = select_keyframes(parts(3, 1), None, ("middle", "ends"))
    assert kf.per_partition[1] == (4,)


def test_mean_picks_row_on_centroid():
    emb = np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]])
    kf = select_keyframes(parts(3), emb, ("mean",))
    assert kf.per_partition == ((2,),)


def test_mean_requires_embeddings():
    with pytest.raises(ValueError):
        select_keyframes(parts(3), None, ("mean",))


def test_flat_scores():
    assert flat_scores(parts(2, 4)).tolist() == [2, 2, 4, 4, 4, 4]


def test_flat_scores_single_section():
    assert flat_scores(parts(5)).tolist() == [5] * 5


def test_low_keypoints_ends_rule():
    kf = select_keyframes(parts(5), None, ("ends",))
    kp = keypoints(parts(5), kf)[0]
    assert kp.high == (1, 5)
    assert kp.low == (3,)


def test_low_keypoints_middle_rule():
    kf = select_keyframes(parts(5), None, ("middle",))
    kp = keypoints(parts(5), kf)[0]
    assert kp.high == (3,)
    assert kp.low == (1, 5)


def test_degenerate_partition_keypoints_coincide():
    kf = select_keyframes(parts(1), None, ("middle",))
    kp = keypoints(parts(1), kf)[0]
    assert kp.high == kp.low == (1,)


def test_increase_bias_value():
    p = parts(4)
    kf = select_keyframes(p, None, ("middle",))
    curve = bias_and_interpolate(flat_scores(p), p, keypoints(p, kf), "increase", 0.5)
    assert curve.final[2] == pytest.approx(6.0)  # keyframe at sample 3: 4 * 1.5


def test_cosine_midpoint():
    # keypoints at 1 (v=6) and 5 (v=4); midpoint hits the average
    p = parts(5)
    kp = keypoints(p, KeyframeSet(per_partition=((1,),)))
    flat = np.full(5, 4.0)
    flat[0] = 6.0 / 1.5  # so the increased keyframe value is exactly 6
    curve = bias_and_interpolate(flat, p, kp, "increase", 0.5, "cosine")
    assert curve.final[0] == pytest.approx(6.0)
    assert curve.final[2] == pytest.approx(5.0)


def test_keypoint_values_pinned_exactly():
    p = parts(7)
    kf = select_keyframes(p, None, ("middle", "ends"))
    kp = keypoints(p, kf)
    flat = flat_scores(p)
    for interp in ("cosine", "linear"):
        curve = bias_and_interpolate(flat, p, kp, "increase", 0.5, interp)
        for i in kp[0].high:
            assert curve.final[i - 1] == flat[i - 1] * 1.5
        for i in kp[0].low:
            if i not in kp[0].high:
                assert curve.final[i - 1] == flat[i - 1]


def test_zero_bias_decrease_reduces_to_flat():
    p = parts(6, 3)
    kf = select_keyframes(p, None, ("middle", "ends"))
    kp = keypoints(p, kf)
    flat = flat_scores(p)
    for interp in ("cosine", "linear"):
        curve = bias_and_interpolate(flat, p, kp, "decrease", 0.0, interp)
        assert np.allclose(curve.final, flat)


def test_bias_range_validation():
    p = parts(4)
    kp = keypoints(p, select_keyframes(p, None, ("middle",)))
    with pytest.raises(ValueError):
        bias_and_interpolate(flat_scores(p), p, kp, "increase", 0.0)
    with pytest.raises(ValueError):
        bias_and_interpolate(flat_scores(p), p, kp, "decrease", 1.5)


@settings(max_examples=100, deadline=None)
@given(
    lengths=st.lists(st.integers(1, 9), min_size=1, max_size=5),
    scheme=st.sampled_from(["increase", "decrease"]),
    interp=st.sampled_from(["cosine", "linear"]),
    bias=st.floats(min_value=0.05, max_value=0.95),
    rules=st.sampled_from([("middle",), ("ends",), ("middle", "ends")]),
)
def test_bias_direction_property(lengths, scheme, interp, bias, rules):
    p = parts(*lengths)
    kf = select_keyframes(p, None, rules)
    kp = keypoints(p, kf)
    flat = flat_scores(p)
    curve = bias_and_interpolate(flat, p, kp, scheme, bias, interp)
    if scheme == "increase":
        assert np.all(curve.final >= flat - 1e-9)
    else:
        assert np.all(curve.final <= flat + 1e-9)
    # interpolation stays within the endpoint envelope per partition
    for (start, n), pk in zip(p.sections, kp):
        seg = curve.final[start - 1 : start + n - 1]
        pinned = [curve.final[i - 1] for i in set(pk.high) | set(pk.low)]
        assert np.min(seg) >= min(pinned) - 1e-9
        assert np.max(seg) <= max(pinned) + 1e-9


def test_cosine_monotone_between_keypoints():
    p = parts(9)
    kp = keypoints(p, KeyframeSet(per_partition=((1,),)))
    flat = np.full(9, 4.0)
    curve = bias_and_interpolate(flat, p, kp, "increase", 0.5, "cosine")
    seg = curve.final[:9]  # keypoints at 1 (6.0) and 9 (4.0)
    diffs = np.diff(seg)
    assert np.all(diffs <= 1e-12)
    assert seg[0] == pytest.approx(6.0) and seg[-1] == pytest.approx(4.0)
