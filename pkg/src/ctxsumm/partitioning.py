"""From per-sample cluster labels to contiguous semantic partitions.

Three steps: majority-vote smoothing of the label sequence, run-length
initialization of sections, and iterative refinement that absorbs or
splits sections shorter than the minimum length.
"""

from __future__ import annotations

from collections import Counter

import numpy as np

from .types import LabelSequence, PartitionSet


def smooth_labels(labels: LabelSequence, window: int) -> LabelSequence:
    """Replace each label by the majority label in a centered window.

    The window shrinks at the boundaries. A tie keeps the sample's own
    label when it is among the modes, otherwise the smallest label wins.
    """
    if window < 1 or window % 2 == 0:
        raise ValueError(f"window must be odd and >= 1, got {window}")
    half = (window - 1) // 2
    arr = labels.labels
    n = len(arr)
    out = np.empty_like(arr)
    for i in range(n):
        lo = max(0, i - half)
        hi = min(n, i + half + 1)
        counts = Counter(arr[lo:hi].tolist())
        top = max(counts.values())
        modes = [lab for lab, c in counts.items() if c == top]
        own = int(arr[i])
        out[i] = own if own in modes else min(modes)
    return LabelSequence(out)


def init_partitions(labels: LabelSequence) -> PartitionSet:
    """Maximal runs of equal labels become sections."""
    arr = labels.labels
    sections = []
    start = 1
    for i in range(1, len(arr)):
        if arr[i] != arr[i - 1]:
            sections.append((start, i + 1 - start))
            start = i + 1
    sections.append((start, len(arr) + 1 - start))
    return PartitionSet(sections=tuple(sections))


def refine_partitions(partitions: PartitionSet, min_length: int) -> PartitionSet:
    """Grow every section to at least ``min_length`` samples.

    Repeatedly take the shortest section (leftmost on ties): the first
    section is absorbed by its successor, the last by its predecessor, and
    an interior one is split between its neighbors, the left neighbor
    taking ceil(n/2) leading samples and the right the rest. Stops when all
    sections are long enough or a single section remains.
    """
    if min_length < 1:
        raise ValueError("min_length must be >= 1")
    lengths = list(partitions.lengths)
    while len(lengths) > 1 and min(lengths) < min_length:
        i = lengths.index(min(lengths))
        n = lengths[i]
        if i == 0:
            lengths[1] += n
            del lengths[0]
        elif i == len(lengths) - 1:
            lengths[i - 1] += n
            del lengths[i]
        else:
            left = (n + 1) // 2
            lengths[i - 1] += left
            lengths[i + 1] += n - left
            del lengths[i]
    starts = np.cumsum([1] + lengths[:-1])
    return PartitionSet(sections=tuple(zip(starts.tolist(), lengths)))
