"""Per-partition keyframe selection and importance scoring.

Keyframes anchor the summary; importance starts flat at the section
length, gets biased at high/low keypoints, and is interpolated between
them within each partition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .types import ImportanceCurve, KeyframeSet, PartitionSet

KEYFRAME_RULES = ("mean", "middle", "ends")
_DISTANCES = ("euclidean", "cosine")


def _point_distance(a: np.ndarray, b: np.ndarray, distance: str) -> float:
    if distance == "euclidean":
        return float(np.linalg.norm(a - b))
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0 or nb == 0:
        return 1.0
    return float(1.0 - np.dot(a, b) / (na * nb))


def select_keyframes(
    partitions: PartitionSet,
    embeddings: np.ndarray | None,
    rules,
    distance: str = "euclidean",
) -> KeyframeSet:
    """Pick keyframes in each partition per the requested rules.

    ``mean``: the sample closest to the partition's mean embedding (ties
    go to the smallest index). ``middle``: start + floor(length / 2).
    ``ends``: the first and last samples. Rules combine as a set union.
    """
    rules = tuple(rules)
    if not rules:
        raise ValueError("at least one keyframe rule required")
    for r in rules:
        if r not in KEYFRAME_RULES:
            raise ValueError(f"unknown keyframe rule {r!r}; choose from {KEYFRAME_RULES}")
    if distance not in _DISTANCES:
        raise ValueError(f"unknown distance {distance!r}")
    if "mean" in rules and embeddings is None:
        raise ValueError("mean rule requires embeddings")
    per = []
    for p, n in partitions.sections:
        ks: set[int] = set()
        if "mean" in rules:
            rows = embeddings[p - 1 : p + n - 1]
            center = rows.mean(axis=0)
            dists = [_point_distance(rows[j], center, distance) for j in range(n)]
            ks.add(p + int(np.argmin(dists)))
        if "middle" in rules:
            ks.add(p + n // 2)
        if "ends" in rules:
            ks.add(p)
            ks.add(p + n - 1)
        per.append(tuple(sorted(ks)))
    return KeyframeSet(per_partition=tuple(per))


def flat_scores(partitions: PartitionSet) -> np.ndarray:
    """Every sample scores the length of the section it belongs to."""
    out = np.empty(partitions.sample_count, dtype=np.float64)
    for p, n in partitions.sections:
        out[p - 1 : p + n - 1] = n
    return out


@dataclass(frozen=True)
class PartitionKeypoints:
    """High (keyframe) and low (farthest-from-keyframe) sample positions of
    one partition; high wins when both sets would claim a sample."""

    high: tuple
    low: tuple


def keypoints(partitions: PartitionSet, keyframes: KeyframeSet) -> list[PartitionKeypoints]:
    """Locate high and low keypoints per partition.

    Low keypoints are all samples maximizing the distance to the nearest
    keyframe of their partition.
    """
    if len(keyframes.per_partition) != len(partitions):
        raise ValueError("keyframe set does not match partition count")
    result = []
    for (p, n), ks in zip(partitions.sections, keyframes.per_partition):
        for k in ks:
            if not p <= k <= p + n - 1:
                raise ValueError(f"keyframe {k} outside its partition [{p}, {p + n - 1}]")
        gaps = [min(abs(j - k) for k in ks) for j in range(p, p + n)]
        top = max(gaps)
        low = tuple(p + j for j, g in enumerate(gaps) if g == top)
        result.append(PartitionKeypoints(high=tuple(ks), low=low))
    return result


def _interp_cosine(vj: float, vk: float, j: int, k: int, i: int) -> float:
    return (vj - vk) / 2.0 * math.cos(math.pi * (i - j) / (k - j)) + (vj + vk) / 2.0


def _interp_linear(vj: float, vk: float, j: int, k: int, i: int) -> float:
    return vj + (vk - vj) / (k - j) * (i - j)


def bias_and_interpolate(
    flat: np.ndarray,
    partitions: PartitionSet,
    partition_keypoints,
    scheme: str,
    bias: float,
    interpolation: str = "cosine",
) -> ImportanceCurve:
    """Pin keypoint importances per the biasing scheme, then interpolate.

    ``increase`` multiplies keyframe scores by (1 + bias), bias > 0;
    ``decrease`` multiplies low-keypoint scores by (1 - bias), bias in
    [0, 1]. Samples between two consecutive keypoints of a partition follow
    the cosine or linear curve through the pinned values; samples outside
    the outermost keypoints copy the nearest keypoint's value.
    """
    if scheme == "increase":
        if not bias > 0:
            raise ValueError("increase scheme requires bias > 0")
        high_mult, low_mult = 1.0 + bias, 1.0
    elif scheme == "decrease":
        if not 0.0 <= bias <= 1.0:
            raise ValueError("decrease scheme requires bias in [0, 1]")
        high_mult, low_mult = 1.0, 1.0 - bias
    else:
        raise ValueError(f"unknown biasing scheme {scheme!r}")
    if interpolation == "cosine":
        interp = _interp_cosine
    elif interpolation == "linear":
        interp = _interp_linear
    else:
        raise ValueError(f"unknown interpolation {interpolation!r}")

    flat = np.asarray(flat, dtype=np.float64)
    final = flat.copy()
    for (p, n), kp in zip(partitions.sections, partition_keypoints):
        pinned: dict[int, float] = {}
        for i in kp.low:
            pinned[i] = flat[i - 1] * low_mult
        for i in kp.high:
            pinned[i] = flat[i - 1] * high_mult
        pos = sorted(pinned)
        for i in range(p, p + n):
            if i in pinned:
                final[i - 1] = pinned[i]
            elif i < pos[0]:
                final[i - 1] = pinned[pos[0]]
            elif i > pos[-1]:
                final[i - 1] = pinned[pos[-1]]
            else:
                nxt = next(idx for idx, q in enumerate(pos) if q > i)
                j, k = pos[nxt - 1], pos[nxt]
                final[i - 1] = interp(pinned[j], pinned[k], j, k, i)
    return ImportanceCurve(flat=flat, final=final)
