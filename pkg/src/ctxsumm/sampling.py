"""Frame subsampling: normalize an arbitrary input frame rate to a target
rate by cutting the video into equal-length snippets and keeping each
snippet's middle frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


@dataclass(frozen=True)
class SamplingPlan:
    """Arithmetic sequence of 1-based frame indexes to keep.

    ``snippet_length`` is the spacing, ``first_index`` the midpoint of the
    first snippet; only complete snippets contribute a sample, so
    ``count == total_frames // snippet_length``.
    """

    total_frames: int
    input_fps: float
    target_fps: float
    snippet_length: int
    first_index: int
    count: int

    @property
    def indexes(self) -> np.ndarray:
        return self.first_index + self.snippet_length * np.arange(self.count, dtype=np.int64)

    @property
    def achieved_fps(self) -> float:
        return self.input_fps / self.snippet_length


def plan_sampling(total_frames: int, input_fps: float, target_fps: float) -> SamplingPlan:
    """Build the subsampling plan for a video of ``total_frames`` at
    ``input_fps``, aiming at ``target_fps``.

    The snippet length is the best integer approximation of
    ``input_fps / target_fps`` (half-up, clamped to [1, total_frames]) and
    one sample is taken at the middle of each complete snippet.
    """
    if total_frames < 1:
        raise ValueError("total_frames must be >= 1")
    if input_fps <= 0 or target_fps <= 0:
        raise ValueError("frame rates must be positive")
    snippet = max(1, _round_half_up(input_fps / target_fps))
    if snippet > total_frames:
        # shorter than one snippet: keep its midpoint as the only sample
        first = (total_frames + 1) // 2
        count = 1
    else:
        first = (snippet + 1) // 2
        count = total_frames // snippet
    return SamplingPlan(
        total_frames=total_frames,
        input_fps=input_fps,
        target_fps=target_fps,
        snippet_length=snippet,
        first_index=first,
        count=count,
    )


def apply_plan(plan: SamplingPlan, source):
    """Pick the planned entries out of a per-frame sequence or matrix.

    ``source`` must have exactly ``plan.total_frames`` leading entries; the
    result keeps rows at the planned 1-based indexes.
    """
    n = len(source)
    if n != plan.total_frames:
        raise ValueError(f"source has {n} frames, plan expects {plan.total_frames}")
    idx0 = plan.indexes - 1
    if isinstance(source, np.ndarray):
        return source[idx0]
    return [source[i] for i in idx0]
