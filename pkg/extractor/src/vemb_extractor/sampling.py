"""Frame sampling plan, kept byte-for-byte compatible with the consumer
pipeline: equal snippets at the best integer approximation of the target
rate, one sample at each complete snippet's midpoint.
"""

from __future__ import annotations

import math

import numpy as np


def snippet_length(input_fps: float, target_fps: float) -> int:
    if input_fps <= 0 or target_fps <= 0:
        raise ValueError("frame rates must be positive")
    return max(1, int(math.floor(input_fps / target_fps + 0.5)))


def sample_indexes(total_frames: int, input_fps: float, target_fps: float) -> np.ndarray:
    """1-based frame indexes to embed."""
    if total_frames < 1:
        raise ValueError("total_frames must be >= 1")
    snippet = snippet_length(input_fps, target_fps)
    if snippet > total_frames:
        return np.array([(total_frames + 1) // 2], dtype=np.int64)
    first = (snippet + 1) // 2
    count = total_frames // snippet
    return first + snippet * np.arange(count, dtype=np.int64)


def achieved_fps(input_fps: float, target_fps: float) -> float:
    return input_fps / snippet_length(input_fps, target_fps)
