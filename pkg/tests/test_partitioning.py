import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ctxsumm.partitioning import init_partitions, refine_partitions, smooth_labels
from ctxsumm.types import LabelSequence, PartitionSet


def labels(*xs):
    return LabelSequence(np.array(xs, dtype=np.int64))


def test_smooth_outlier_removed():
    assert smooth_labels(labels(1, 1, 2, 1, 1), 5).labels.tolist() == [1, 1, 1, 1, 1]


def test_smooth_constant_fixed_point():
    assert smooth_labels(labels(3, 3, 3, 3), 3).labels.tolist() == [3, 3, 3, 3]


def test_smooth_tie_rules():
    # window 3: edges keep their own label on ties, interior follows the mode
    assert smooth_labels(labels(1, 2, 1, 2, 1), 3).labels.tolist() == [1, 1, 2, 1, 1]


def test_smooth_even_window_rejected():
    with pytest.raises(ValueError):
        smooth_labels(labels(1, 2), 4)


def test_smooth_never_invents_labels():
    rng = np.random.default_rng(0)
    for _ in range(50):
        n = int(rng.integers(1, 40))
        seq = labels(*rng.integers(0, 5, size=n))
        out = smooth_labels(seq, 5)
        half = 2
        for i in range(n):
            window = set(seq.labels[max(0, i - half) : i + half + 1].tolist())
            assert int(out.labels[i]) in window


def test_init_run_length():
    parts = init_partitions(labels(1, 1, 2, 2, 2, 3))
    assert parts.sections == ((1, 2), (3, 3), (6, 1))


def test_init_constant():
    assert init_partitions(labels(7, 7, 7)).sections == ((1, 3),)


def test_init_alternating():
    parts = init_partitions(labels(1, 2, 1, 2, 1, 2))
    assert parts.sections == tuple((i, 1) for i in range(1, 7))


def sections_from_lengths(lengths):
    starts = np.cumsum([1] + list(lengths[:-1]))
    return PartitionSet(sections=tuple(zip(starts.tolist(), lengths)))


def test_refine_last_absorbed():
    out = refine_partitions(sections_from_lengths([2, 3, 1]), 2)
    assert out.lengths == [2, 4]


def test_refine_interior_split():
    out = refine_partitions(sections_from_lengths([3, 1, 3]), 2)
    assert out.lengths == [4, 3]


def test_refine_noop_when_long_enough():
    parts = sections_from_lengths([4, 5, 4])
    assert refine_partitions(parts, 4).sections == parts.sections


def test_refine_total_absorption():
    out = refine_partitions(sections_from_lengths([1, 1, 1]), 10)
    assert out.sections == ((1, 3),)


def refine_interpreter(lengths, min_length):
    """Literal step-by-step reading of the refinement loop, kept separate
    from the implementation on purpose."""
    lens = list(lengths)
    count = len(lens)
    while count > 1 and min_length > min(lens):
        shortest = min(lens)
        pos = next(i for i, n in enumerate(lens) if n == shortest)
        if pos == 0:
            merged = lens[0] + lens[1]
            lens = [merged] + lens[2:]
        elif pos == count - 1:
            merged = lens[-2] + lens[-1]
            lens = lens[:-2] + [merged]
        else:
            left_take = -(-lens[pos] // 2)  # ceil
            right_take = lens[pos] // 2
            lens = (
                lens[: pos - 1]
                + [lens[pos - 1] + left_take]
                + [lens[pos + 1] + right_take]
                + lens[pos + 2 :]
            )
        count -= 1
    return lens


@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_refine_matches_interpreter(data):
    n = data.draw(st.integers(min_value=1, max_value=12))
    lengths = data.draw(st.lists(st.integers(1, 9), min_size=n, max_size=n))
    eps = data.draw(st.sampled_from([2, 4, 8]))
    out = refine_partitions(sections_from_lengths(lengths), eps)
    assert out.lengths == refine_interpreter(lengths, eps)
    # cover and minimum-length guarantees
    assert sum(out.lengths) == sum(lengths)
    assert min(out.lengths) >= min(eps, sum(lengths))


def test_init_smooth_sections_have_uniform_label():
    rng = np.random.default_rng(7)
    for _ in range(30):
        seq = labels(*rng.integers(0, 4, size=int(rng.integers(1, 60))))
        smoothed = smooth_labels(seq, 5)
        parts = init_partitions(smoothed)
        for p, n in parts.sections:
            segment = smoothed.labels[p - 1 : p + n - 1]
            assert len(set(segment.tolist())) == 1
