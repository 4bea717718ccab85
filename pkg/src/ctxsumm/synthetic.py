"""Synthetic fixtures: temporally-blocked Gaussian-blob videos with planted
ground truth, for experiments and end-to-end verification without real
media or a pretrained backbone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .sampling import plan_sampling
from .types import DatasetManifest, EmbeddingSet, ManifestVideo, VideoMeta


@dataclass(frozen=True)
class BlockTruth:
    """What was planted: sample-index block boundaries and the frame sets a
    user watching the video would pick."""

    block_lengths: tuple
    boundary_samples: tuple  # 1-based sample index starting each later block
    important_blocks: tuple  # 0-based indexes of the blocks users select


def make_block_video(
    video_id: str = "synthetic",
    block_lengths=(160, 40, 80, 40, 80),
    input_fps: float = 30.0,
    target_fps: float = 4.0,
    dim: int = 16,
    separation: float = 10.0,
    noise: float = 1.0,
    segment_frames: int = 160,
    important_blocks=(0,),
    user_count: int = 3,
    user_jitter: int = 8,
    seed: int = 0,
) -> tuple[EmbeddingSet, ManifestVideo, BlockTruth]:
    """Build one synthetic video.

    The embedding stream has one Gaussian blob per temporal block, blob
    centers ``separation`` apart. The manifest carries uniform shot
    segments and ``user_count`` planted user summaries covering the
    ``important_blocks`` (jittered at the edges so users differ).
    """
    rng = np.random.default_rng(seed)
    sample_count = int(sum(block_lengths))
    plan = plan_sampling(
        total_frames=sample_count, input_fps=input_fps, target_fps=target_fps
    )
    # realize exactly one sample per block entry: total frames scale with
    # the snippet length the plan derives from the rates
    total_frames = sample_count * plan.snippet_length
    plan = plan_sampling(total_frames, input_fps, target_fps)
    assert plan.count == sample_count

    centers = np.zeros((len(block_lengths), dim))
    for b in range(len(block_lengths)):
        centers[b, b % dim] = separation
    rows = []
    for b, length in enumerate(block_lengths):
        rows.append(rng.normal(scale=noise, size=(length, dim)) + centers[b])
    matrix = np.vstack(rows)

    emb = EmbeddingSet(
        total_frames=total_frames,
        input_fps=input_fps,
        sample_fps=plan.achieved_fps,
        sample_indexes=plan.indexes,
        matrix=matrix,
    )

    starts = np.cumsum([0] + list(block_lengths))
    boundary_samples = tuple(int(s) + 1 for s in starts[1:-1])

    snippet = plan.snippet_length
    segments = tuple(
        (a, min(a + segment_frames - 1, total_frames))
        for a in range(1, total_frames + 1, segment_frames)
    )

    def block_frames(b: int) -> tuple[int, int]:
        first_sample = int(starts[b]) + 1
        last_sample = int(starts[b + 1])
        return (first_sample - 1) * snippet + 1, last_sample * snippet

    summaries = []
    for _ in range(user_count):
        chosen: set[int] = set()
        for b in important_blocks:
            lo, hi = block_frames(b)
            lo = max(1, lo + int(rng.integers(-user_jitter, user_jitter + 1)))
            hi = min(total_frames, hi + int(rng.integers(-user_jitter, user_jitter + 1)))
            chosen.update(range(lo, hi + 1))
        summaries.append(frozenset(chosen))

    video = ManifestVideo(
        meta=VideoMeta(video_id=video_id, total_frames=total_frames, input_fps=input_fps),
        segments=segments,
        user_summaries=tuple(summaries),
    )
    truth = BlockTruth(
        block_lengths=tuple(int(x) for x in block_lengths),
        boundary_samples=boundary_samples,
        important_blocks=tuple(important_blocks),
    )
    return emb, video, truth


def make_block_dataset(video_specs, seed: int = 0):
    """Several synthetic videos under one manifest.

    ``video_specs`` is a list of kwargs dicts for make_block_video (minus
    the seed, which is derived per video).
    """
    embeddings = {}
    videos = []
    truths = {}
    for i, spec in enumerate(video_specs):
        spec = dict(spec)
        vid = spec.pop("video_id", f"synthetic-{i}")
        emb, video, truth = make_block_video(video_id=vid, seed=seed + i, **spec)
        embeddings[vid] = emb
        videos.append(video)
        truths[vid] = truth
    return DatasetManifest(videos=tuple(videos)), embeddings, truths


def boundary_recovery(partitions, truth: BlockTruth, tolerance: int = 2) -> float:
    """Fraction of planted block boundaries matched by a partition start
    within the tolerance (in samples)."""
    starts = [p for p, _ in partitions.sections]
    hits = sum(
        1
        for b in truth.boundary_samples
        if any(abs(s - b) <= tolerance for s in starts)
    )
    return hits / len(truth.boundary_samples)
