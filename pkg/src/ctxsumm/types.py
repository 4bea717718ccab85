"""Core domain types shared across the summarization pipeline.

All frame and sample indexes are 1-based; conversion to 0-based happens
only at array-access boundaries. Instances are validated on construction
and treated as immutable afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np


class ValidationError(ValueError):
    """Raised when a domain object violates one of its invariants."""


def _as_float_matrix(m) -> np.ndarray:
    arr = np.asarray(m, dtype=np.float64)
    if arr.ndim != 2:
        raise ValidationError(f"embedding matrix must be 2-D, got shape {arr.shape}")
    return arr


def _as_index_array(ix) -> np.ndarray:
    return np.asarray(ix, dtype=np.int64)


@dataclass(frozen=True)
class VideoMeta:
    """Identity and geometry of a source video."""

    video_id: str
    total_frames: int
    input_fps: float
    width: int = 1
    height: int = 1
    channels: int = 1

    def __post_init__(self):
        if self.total_frames < 1:
            raise ValidationError(f"total_frames must be >= 1, got {self.total_frames}")
        if not self.input_fps > 0:
            raise ValidationError(f"input_fps must be > 0, got {self.input_fps}")
        for name in ("width", "height", "channels"):
            if getattr(self, name) < 1:
                raise ValidationError(f"{name} must be >= 1")


@dataclass(frozen=True)
class EmbeddingSet:
    """Per-sample embedding matrix plus the 1-based frame indexes it came from.

    Carries exactly the fields the VEMB interchange format stores, so a
    write/read round trip is the identity.
    """

    total_frames: int
    input_fps: float
    sample_fps: float
    sample_indexes: np.ndarray  # shape (T_hat,), strictly increasing, in [1, T]
    matrix: np.ndarray  # shape (T_hat, D)

    def __post_init__(self):
        object.__setattr__(self, "sample_indexes", _as_index_array(self.sample_indexes))
        object.__setattr__(self, "matrix", _as_float_matrix(self.matrix))
        t = self.sample_indexes
        if self.total_frames < 1:
            raise ValidationError("total_frames must be >= 1")
        if not (self.input_fps > 0 and self.sample_fps > 0):
            raise ValidationError("frame rates must be positive")
        if t.ndim != 1 or len(t) == 0:
            raise ValidationError("sample_indexes must be a non-empty 1-D sequence")
        if len(t) != self.matrix.shape[0]:
            raise ValidationError(
                f"{len(t)} sample indexes but {self.matrix.shape[0]} embedding rows"
            )
        if np.any(np.diff(t) <= 0):
            raise ValidationError("sample_indexes must be strictly increasing")
        if t[0] < 1 or t[-1] > self.total_frames:
            raise ValidationError("sample_indexes must lie within [1, total_frames]")
        bad = np.argwhere(~np.isfinite(self.matrix))
        if len(bad):
            r, c = bad[0]
            raise ValidationError(f"non-finite embedding entry at row {r}, column {c}")

    @property
    def sample_count(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[1])

    def __eq__(self, other) -> bool:
        if not isinstance(other, EmbeddingSet):
            return NotImplemented
        return (
            self.total_frames == other.total_frames
            and self.input_fps == other.input_fps
            and self.sample_fps == other.sample_fps
            and np.array_equal(self.sample_indexes, other.sample_indexes)
            and np.array_equal(self.matrix, other.matrix)
        )


@dataclass(frozen=True)
class ReducedEmbeddingSet:
    """Embedding set after dimensionality reduction, with reducer provenance.

    ``provenance`` records the applied chain, e.g.
    ``[("pca", 34), ("tsne", 2)]``; an empty chain means identity.
    """

    base: EmbeddingSet
    provenance: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "provenance", tuple(tuple(step) for step in self.provenance))

    @property
    def matrix(self) -> np.ndarray:
        return self.base.matrix

    @property
    def sample_count(self) -> int:
        return self.base.sample_count

    @property
    def dim(self) -> int:
        return self.base.dim


@dataclass(frozen=True)
class LabelSequence:
    """One cluster label per sample."""

    labels: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.labels, dtype=np.int64)
        if arr.ndim != 1 or len(arr) == 0:
            raise ValidationError("labels must be a non-empty 1-D sequence")
        if np.any(arr < 0):
            raise ValidationError("labels must be non-negative")
        object.__setattr__(self, "labels", arr)

    def __len__(self) -> int:
        return len(self.labels)

    def canonicalized(self) -> "LabelSequence":
        """Relabel to 0..K-1 in order of first appearance."""
        mapping: dict[int, int] = {}
        out = np.empty_like(self.labels)
        for i, lab in enumerate(self.labels):
            if lab not in mapping:
                mapping[int(lab)] = len(mapping)
            out[i] = mapping[int(lab)]
        return LabelSequence(out)

    @property
    def cluster_count(self) -> int:
        return len(set(self.labels.tolist()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabelSequence):
            return NotImplemented
        return np.array_equal(self.labels, other.labels)


@dataclass(frozen=True)
class PartitionSet:
    """Ordered contiguous sections over sample indexes (1-based, full cover)."""

    sections: tuple  # tuple of (start, length)

    def __post_init__(self):
        secs = tuple((int(p), int(n)) for p, n in self.sections)
        if not secs:
            raise ValidationError("at least one section required")
        if secs[0][0] != 1:
            raise ValidationError("first section must start at 1")
        for (p, n), (q, _) in zip(secs, secs[1:]):
            if n < 1:
                raise ValidationError("section lengths must be positive")
            if q != p + n:
                raise ValidationError(f"section starting at {q} does not touch previous end {p + n}")
        if secs[-1][1] < 1:
            raise ValidationError("section lengths must be positive")
        object.__setattr__(self, "sections", secs)

    @property
    def sample_count(self) -> int:
        p, n = self.sections[-1]
        return p + n - 1

    @property
    def lengths(self) -> list[int]:
        return [n for _, n in self.sections]

    def section_of(self, sample_index: int) -> int:
        """0-based position of the section containing a 1-based sample index."""
        for i, (p, n) in enumerate(self.sections):
            if p <= sample_index < p + n:
                return i
        raise ValidationError(f"sample index {sample_index} outside cover")

    def __len__(self) -> int:
        return len(self.sections)


@dataclass(frozen=True)
class KeyframeSet:
    """Per-partition keyframes (1-based sample indexes) and their sorted union."""

    per_partition: tuple  # tuple of tuples of sample indexes

    def __post_init__(self):
        per = tuple(tuple(sorted(set(int(k) for k in ks))) for ks in self.per_partition)
        if any(len(ks) == 0 for ks in per):
            raise ValidationError("every partition needs at least one keyframe")
        object.__setattr__(self, "per_partition", per)

    @property
    def union(self) -> list[int]:
        flat = sorted({k for ks in self.per_partition for k in ks})
        return flat

    def __len__(self) -> int:
        return len(self.union)


@dataclass(frozen=True)
class ImportanceCurve:
    """Per-sample scores before/after keypoint biasing, plus the optional
    per-frame extrapolation."""

    flat: np.ndarray
    final: np.ndarray
    per_frame: Optional[np.ndarray] = None

    def __post_init__(self):
        flat = np.asarray(self.flat, dtype=np.float64)
        final = np.asarray(self.final, dtype=np.float64)
        if flat.shape != final.shape or flat.ndim != 1:
            raise ValidationError("flat and final scores must be 1-D and same length")
        object.__setattr__(self, "flat", flat)
        object.__setattr__(self, "final", final)
        if self.per_frame is not None:
            object.__setattr__(self, "per_frame", np.asarray(self.per_frame, dtype=np.float64))


@dataclass(frozen=True)
class SummarySelection:
    """Final selection of original-video frames."""

    selected_frames: tuple  # sorted 1-based frame indexes
    total_frames: int
    budget_frames: int

    def __post_init__(self):
        sel = tuple(sorted(set(int(i) for i in self.selected_frames)))
        if sel and (sel[0] < 1 or sel[-1] > self.total_frames):
            raise ValidationError("selected frames must lie within [1, total_frames]")
        if self.budget_frames < 0:
            raise ValidationError("budget_frames must be >= 0")
        object.__setattr__(self, "selected_frames", sel)

    @property
    def selection_vector(self) -> np.ndarray:
        y = np.zeros(self.total_frames, dtype=np.int8)
        if self.selected_frames:
            y[np.asarray(self.selected_frames) - 1] = 1
        return y

    def __len__(self) -> int:
        return len(self.selected_frames)


@dataclass(frozen=True)
class ManifestVideo:
    """One dataset video: metadata, shot segments, user summaries."""

    meta: VideoMeta
    segments: tuple  # ((start, end) inclusive, disjoint, covering [1, T])
    user_summaries: tuple  # tuple of frozensets of 1-based frame indexes

    def __post_init__(self):
        T = self.meta.total_frames
        segs = tuple((int(a), int(b)) for a, b in self.segments)
        if not segs:
            raise ValidationError(f"{self.meta.video_id}: at least one segment required")
        expect = 1
        for a, b in segs:
            if a != expect:
                kind = "gap" if a > expect else "overlap"
                raise ValidationError(f"{self.meta.video_id}: {kind} before segment [{a}, {b}]")
            if b < a:
                raise ValidationError(f"{self.meta.video_id}: empty segment [{a}, {b}]")
            expect = b + 1
        if expect != T + 1:
            raise ValidationError(f"{self.meta.video_id}: segments end at {expect - 1}, expected {T}")
        object.__setattr__(self, "segments", segs)
        sums = tuple(frozenset(int(i) for i in u) for u in self.user_summaries)
        for j, u in enumerate(sums):
            for i in u:
                if not 1 <= i <= T:
                    raise ValidationError(
                        f"{self.meta.video_id}: user summary {j} index {i} outside [1, {T}]"
                    )
        object.__setattr__(self, "user_summaries", sums)

    @property
    def segment_lengths(self) -> list[int]:
        return [b - a + 1 for a, b in self.segments]


@dataclass(frozen=True)
class DatasetManifest:
    """Collection of annotated videos making up an evaluation dataset."""

    videos: tuple

    def __post_init__(self):
        object.__setattr__(self, "videos", tuple(self.videos))
        ids = [v.meta.video_id for v in self.videos]
        if len(ids) != len(set(ids)):
            raise ValidationError("duplicate video ids in manifest")

    def __len__(self) -> int:
        return len(self.videos)

    def video(self, video_id: str) -> ManifestVideo:
        for v in self.videos:
            if v.meta.video_id == video_id:
                return v
        raise KeyError(video_id)
