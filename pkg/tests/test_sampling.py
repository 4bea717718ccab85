import numpy as np
import pytest
from hypothesis import given, strategies as st

from ctxsumm.sampling import apply_plan, plan_sampling


def test_six_to_two_fps():
    plan = plan_sampling(total_frames=18, input_fps=6, target_fps=2)
    assert plan.snippet_length == 3
    assert plan.first_index == 2
    assert plan.count == 6
    assert plan.indexes.tolist() == [2, 5, 8, 11, 14, 17]


def test_identity_when_rates_match():
    plan = plan_sampling(total_frames=10, input_fps=4, target_fps=4)
    assert plan.snippet_length == 1
    assert plan.first_index == 1
    assert plan.count == 10
    assert plan.indexes.tolist() == list(range(1, 11))


def test_thirty_to_four_fps():
    plan = plan_sampling(total_frames=300, input_fps=30, target_fps=4)
    assert plan.snippet_length == 8  # 7.5 rounds half-up
    assert plan.first_index == 4
    assert plan.count == 37


def test_short_video_clamps_to_single_sample():
    plan = plan_sampling(total_frames=3, input_fps=30, target_fps=1)
    assert plan.count == 1
    assert 1 <= plan.first_index <= 3


def test_apply_plan_picks_planned_entries():
    from ctxsumm.sampling import SamplingPlan

    plan = SamplingPlan(
        total_frames=5, input_fps=6, target_fps=2,
        snippet_length=3, first_index=2, count=2,
    )
    assert plan.indexes.tolist() == [2, 5]
    assert apply_plan(plan, ["a", "b", "c", "d", "e"]) == ["b", "e"]


def test_apply_plan_identity():
    plan = plan_sampling(total_frames=4, input_fps=2, target_fps=2)
    src = np.arange(4)
    assert apply_plan(plan, src).tolist() == src.tolist()


def test_apply_plan_length_mismatch():
    plan = plan_sampling(total_frames=5, input_fps=6, target_fps=2)
    with pytest.raises(ValueError):
        apply_plan(plan, ["a", "b"])


@given(
    total=st.integers(min_value=1, max_value=5000),
    fps=st.floats(min_value=0.5, max_value=120, allow_nan=False),
    target=st.floats(min_value=0.5, max_value=60, allow_nan=False),
)
def test_plan_invariants(total, fps, target):
    plan = plan_sampling(total, fps, target)
    idx = plan.indexes
    assert len(idx) == plan.count >= 1
    assert idx[0] >= 1 and idx[-1] <= total
    if len(idx) > 1:
        assert set(np.diff(idx).tolist()) == {plan.snippet_length}
    # counts complete snippets (at least one) and cannot fit one more
    assert plan.count == max(1, total // plan.snippet_length)
    assert (plan.count + 1) * plan.snippet_length > total


@given(fps=st.integers(min_value=1, max_value=120))
def test_best_integer_rate(fps):
    # integer fps at the standard target: the chosen snippet length is the
    # best integer approximation of the target rate
    target = 4.0
    plan = plan_sampling(10_000, fps, target)
    snippet = plan.snippet_length
    best = abs(fps / snippet - target)
    for other in range(1, 2 * snippet + 40):
        assert best <= abs(fps / other - target) + 1e-12
