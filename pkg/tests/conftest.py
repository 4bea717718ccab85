import numpy as np
import pytest

from ctxsumm.types import EmbeddingSet, ManifestVideo, VideoMeta


def make_embedding_set(
    sample_count=6,
    dim=3,
    total_frames=None,
    input_fps=6.0,
    sample_fps=2.0,
    seed=0,
):
    rng = np.random.default_rng(seed)
    total = total_frames or sample_count * 3
    indexes = np.sort(rng.choice(np.arange(1, total + 1), size=sample_count, replace=False))
    matrix = rng.normal(size=(sample_count, dim))
    return EmbeddingSet(
        total_frames=total,
        input_fps=input_fps,
        sample_fps=sample_fps,
        sample_indexes=indexes,
        matrix=matrix,
    )


def make_manifest_video(
    video_id="vid",
    total_frames=40,
    fps=4.0,
    segment_length=10,
    user_summaries=(),
):
    bounds = list(range(1, total_frames + 1, segment_length))
    segments = [(a, min(a + segment_length - 1, total_frames)) for a in bounds]
    return ManifestVideo(
        meta=VideoMeta(video_id=video_id, total_frames=total_frames, input_fps=fps),
        segments=tuple(segments),
        user_summaries=tuple(frozenset(u) for u in user_summaries),
    )


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
