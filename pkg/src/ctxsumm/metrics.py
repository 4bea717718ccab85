"""Quantitative evaluation: f-measure against user summaries, dataset
aggregation, random splits, and the random-scoring baseline."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .summarize import evaluation_budget, knapsack_summary
from .types import ManifestVideo


def f_measure(predicted, reference, total_frames: int) -> float:
    """Harmonic mean of precision and recall between two frame-index sets.

    Zero overlap scores 0 (this also covers empty sets, where precision or
    recall is undefined).
    """
    s = set(int(i) for i in predicted)
    u = set(int(i) for i in reference)
    for i in s | u:
        if not 1 <= i <= total_frames:
            raise ValueError(f"frame index {i} outside [1, {total_frames}]")
    tp = len(s & u)
    if tp == 0:
        return 0.0
    precision = tp / len(s)
    recall = tp / len(u)
    return 2.0 * precision * recall / (precision + recall)


def video_score(predicted, user_summaries, total_frames: int, mode: str = "avg") -> float:
    """Aggregate per-user f-measures for one video (``avg`` or ``max``)."""
    if not user_summaries:
        raise ValueError("at least one user summary required")
    scores = [f_measure(predicted, u, total_frames) for u in user_summaries]
    if mode == "avg":
        return sum(scores) / len(scores)
    if mode == "max":
        return max(scores)
    raise ValueError(f"unknown aggregation mode {mode!r}")


def dataset_score(video_scores, mode: str = "avg", splits=None) -> float:
    """Aggregate per-video scores over a dataset.

    ``avg``/``max``/``top5`` over all videos, or, when ``splits`` (a list of
    test-index lists) is given, the per-split mean followed by avg or max
    across splits.
    """
    scores = list(video_scores)
    if not scores:
        raise ValueError("no scores to aggregate")
    if splits is not None:
        if mode == "top5":
            raise ValueError("top5 is not defined across splits")
        per_split = [
            sum(scores[i] for i in test) / len(test) for test in splits
        ]
        return max(per_split) if mode == "max" else sum(per_split) / len(per_split)
    if mode == "avg":
        return sum(scores) / len(scores)
    if mode == "max":
        return max(scores)
    if mode == "top5":
        top = sorted(scores, reverse=True)[:5]
        return sum(top) / len(top)
    raise ValueError(f"unknown aggregation mode {mode!r}")


@dataclass(frozen=True)
class Split:
    train: tuple
    test: tuple


def make_splits(video_ids, count: int, test_fraction: float, seed: int = 0) -> list[Split]:
    """Random train/test partitions of the video id list.

    Each split is an independent seeded shuffle; the test set takes
    round(fraction * n) ids and must be non-empty (the train side may be
    empty).
    """
    ids = list(video_ids)
    if count < 1:
        raise ValueError("split count must be >= 1")
    if not 0.0 < test_fraction < 1.0:
        raise ValueError("test_fraction must lie strictly between 0 and 1")
    n_test = int(math.floor(test_fraction * len(ids) + 0.5))
    if n_test == 0:
        raise ValueError("test set would be empty; increase test_fraction")
    rng = np.random.default_rng(seed)
    splits = []
    for _ in range(count):
        order = rng.permutation(len(ids))
        test = tuple(ids[i] for i in order[:n_test])
        train = tuple(ids[i] for i in order[n_test:])
        splits.append(Split(train=train, test=test))
    return splits


def random_baseline(
    video: ManifestVideo,
    repeats: int = 100,
    seed: int = 0,
    budget_rate: float = 0.15,
) -> float:
    """Mean f-measure of a uniform-random scorer on one video.

    Each repeat draws i.i.d. uniform per-frame scores, runs the same
    segment knapsack as the real pipeline under the standard budget, and
    scores against all user summaries (average aggregation).
    """
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    total = video.meta.total_frames
    budget = evaluation_budget(total, budget_rate)
    rng = np.random.default_rng(seed)
    acc = 0.0
    for _ in range(repeats):
        scores = rng.uniform(size=total)
        selection = knapsack_summary(scores, video.segments, budget)
        acc += video_score(
            selection.selected_frames, video.user_summaries, total, mode="avg"
        )
    return acc / repeats
