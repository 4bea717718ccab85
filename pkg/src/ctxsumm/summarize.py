"""Summary construction: windowed keyframe summaries for direct use, and
importance extrapolation plus segment knapsack for benchmark evaluation.
"""

from __future__ import annotations

import math

import numpy as np

from .sampling import SamplingPlan
from .types import KeyframeSet, SummarySelection


def target_length(total_frames: int, rate: float, max_seconds: float, output_fps: float) -> int:
    """Frame budget for a usable summary: the requested fraction of the
    video, capped at a wall-clock maximum."""
    if total_frames < 1 or rate <= 0 or max_seconds <= 0 or output_fps <= 0:
        raise ValueError("all target_length inputs must be positive")
    return max(1, math.floor(min(total_frames * rate, max_seconds * output_fps)))


def usable_summary(
    keyframes: KeyframeSet,
    importances: np.ndarray,
    plan: SamplingPlan,
    budget: int,
) -> SummarySelection:
    """Select original frames around keyframes, at most ``budget`` total.

    With more keyframes than budget, the highest-importance keyframes are
    kept (earlier sample on ties). Otherwise every keyframe gets a window
    of half-width floor((floor(budget / #keyframes) - 1) / 2) original
    frames around its mapped position.
    """
    ks = keyframes.union
    if not ks:
        raise ValueError("empty keyframe set")
    if budget < 1:
        raise ValueError("budget must be >= 1")
    sample_to_frame = plan.indexes
    total = plan.total_frames
    if budget <= len(ks):
        ranked = sorted(ks, key=lambda k: (-importances[k - 1], k))
        chosen = ranked[:budget]
        frames = sorted(int(sample_to_frame[k - 1]) for k in chosen)
        return SummarySelection(
            selected_frames=tuple(frames), total_frames=total, budget_frames=budget
        )
    per_keyframe = budget // len(ks)
    half = (per_keyframe - 1) // 2
    anchors = np.asarray([int(sample_to_frame[k - 1]) for k in ks])
    frames = [
        i
        for i in range(1, total + 1)
        if np.min(np.abs(anchors - i)) <= half
    ]
    return SummarySelection(
        selected_frames=tuple(frames), total_frames=total, budget_frames=budget
    )


def extrapolate(
    scores: np.ndarray,
    plan: SamplingPlan,
    mode: str = "linear",
) -> np.ndarray:
    """Spread per-sample importances over every original frame.

    ``nearest`` copies the closest sample's score (earlier sample on ties);
    ``linear`` interpolates between the two bracketing samples so that a
    frame sitting on a sample reproduces that sample's score. Frames before
    the first or after the last sample copy the boundary score.
    """
    scores = np.asarray(scores, dtype=np.float64)
    t = plan.indexes
    if len(scores) != len(t):
        raise ValueError("scores and plan sample counts differ")
    total = plan.total_frames
    out = np.empty(total, dtype=np.float64)
    if mode == "nearest":
        for i in range(1, total + 1):
            j = int(np.argmin(np.abs(t - i)))  # argmin takes the earlier sample on ties
            out[i - 1] = scores[j]
        return out
    if mode != "linear":
        raise ValueError(f"unknown extrapolation mode {mode!r}")
    for i in range(1, total + 1):
        if i <= t[0]:
            out[i - 1] = scores[0]
        elif i >= t[-1]:
            out[i - 1] = scores[-1]
        else:
            j = int(np.searchsorted(t, i, side="right")) - 1
            tj, tk = t[j], t[j + 1]
            if i == tj:
                out[i - 1] = scores[j]
            else:
                out[i - 1] = (abs(i - tk) * scores[j] + abs(tj - i) * scores[j + 1]) / (
                    abs(tj - i) + abs(i - tk)
                )
    return out


def segment_values(per_frame: np.ndarray, segments) -> np.ndarray:
    """Sum per-frame importances over each (start, end) inclusive segment."""
    vals = np.empty(len(segments), dtype=np.float64)
    for i, (a, b) in enumerate(segments):
        vals[i] = float(np.sum(per_frame[a - 1 : b]))
    return vals


def knapsack_select(values: np.ndarray, weights, capacity: int) -> list[int]:
    """Exact 0/1 knapsack over integer weights; returns selected indices.

    Among optimal subsets, the earliest-index-preferring one is returned
    (a segment is taken whenever taking it still attains the optimum).
    """
    if capacity < 0:
        raise ValueError("capacity must be >= 0")
    values = np.asarray(values, dtype=np.float64)
    weights = [int(w) for w in weights]
    if any(w < 1 for w in weights):
        raise ValueError("weights must be positive integers")
    n = len(weights)
    if len(values) != n:
        raise ValueError("values and weights lengths differ")
    # best[i][w]: optimum using items i.. with remaining capacity w
    best = np.zeros((n + 1, capacity + 1), dtype=np.float64)
    for i in range(n - 1, -1, -1):
        best[i] = best[i + 1]
        w_i = weights[i]
        if w_i <= capacity:
            take = values[i] + best[i + 1, : capacity - w_i + 1]
            best[i, w_i:] = np.maximum(best[i + 1, w_i:], take)
    chosen = []
    w = capacity
    for i in range(n):
        if weights[i] <= w and values[i] + best[i + 1, w - weights[i]] == best[i, w]:
            chosen.append(i)
            w -= weights[i]
    return chosen


def knapsack_summary(
    per_frame: np.ndarray,
    segments,
    budget: int,
) -> SummarySelection:
    """Pick the segment subset maximizing total importance within a frame
    budget; the summary is the union of the chosen segments' frames."""
    total = len(per_frame)
    values = segment_values(per_frame, segments)
    weights = [b - a + 1 for a, b in segments]
    chosen = knapsack_select(values, weights, budget)
    frames: list[int] = []
    for i in chosen:
        a, b = segments[i]
        frames.extend(range(a, b + 1))
    return SummarySelection(
        selected_frames=tuple(frames), total_frames=total, budget_frames=budget
    )


def evaluation_budget(total_frames: int, budget_rate: float = 0.15) -> int:
    """Frame budget used by the benchmark protocol (a fraction of the
    original video length, floored)."""
    if not 0 <= budget_rate <= 1:
        raise ValueError("budget_rate must be in [0, 1]")
    return math.floor(total_frames * budget_rate)
