"""Decode a video, embed the planned sample frames, write VEMB."""

from __future__ import annotations

from .embedders import EmbedderError, make_embedder
from .sampling import achieved_fps, sample_indexes
from .vemb import write_vemb


class ExtractError(RuntimeError):
    pass


def read_sampled_frames(video_path, indexes) -> tuple[list, int, float]:
    """Sequentially decode the video, keeping the 1-based ``indexes``.

    Returns (frames as RGB arrays, total frame count, fps). Sequential
    reading avoids codec-dependent seek inaccuracies.
    """
    import cv2

    cap = cv2.VideoCapture(str(video_path))
    if not cap.isOpened():
        raise ExtractError(f"cannot decode video {video_path}")
    fps = cap.get(cv2.CAP_PROP_FPS)
    wanted = set(int(i) for i in indexes)
    frames = {}
    pos = 0
    while True:
        ok, frame = cap.read()
        if not ok:
            break
        pos += 1
        if pos in wanted:
            frames[pos] = cv2.cvtColor(frame, cv2.COLOR_BGR2RGB)
    cap.release()
    if pos == 0:
        raise ExtractError(f"video {video_path} contains no decodable frames")
    missing = sorted(wanted - set(frames))
    if missing:
        raise ExtractError(
            f"video {video_path} ended at frame {pos}, missing planned frames {missing[:5]}"
        )
    ordered = [frames[int(i)] for i in indexes]
    return ordered, pos, fps


def probe(video_path) -> tuple[int, float]:
    """Total decodable frame count and container fps."""
    import cv2

    cap = cv2.VideoCapture(str(video_path))
    if not cap.isOpened():
        raise ExtractError(f"cannot decode video {video_path}")
    fps = cap.get(cv2.CAP_PROP_FPS)
    count = int(cap.get(cv2.CAP_PROP_FRAME_COUNT))
    if count <= 0:
        count = 0
        while cap.read()[0]:
            count += 1
    cap.release()
    if count < 1:
        raise ExtractError(f"video {video_path} contains no decodable frames")
    if fps <= 0:
        raise ExtractError(f"video {video_path} reports no frame rate")
    return count, fps


def extract(video_path, out_path, target_fps: float = 4.0, model_id: str = "dummy") -> dict:
    """Run the full extraction; returns a small summary dict."""
    total, fps = probe(video_path)
    indexes = sample_indexes(total, fps, target_fps)
    frames, decoded, _ = read_sampled_frames(video_path, indexes)
    if decoded != total:
        # containers sometimes over-report; re-plan on the decodable length
        total = decoded
        indexes = sample_indexes(total, fps, target_fps)
        frames, _, _ = read_sampled_frames(video_path, indexes)
    try:
        embedder = make_embedder(model_id)
        matrix = embedder.embed_batch(frames)
    except EmbedderError as exc:
        raise ExtractError(str(exc)) from exc
    written = write_vemb(
        out_path,
        matrix,
        indexes,
        total_frames=total,
        input_fps=fps,
        sample_fps=achieved_fps(fps, target_fps),
    )
    return {
        "video": str(video_path),
        "out": str(out_path),
        "total_frames": total,
        "fps": fps,
        "samples": len(indexes),
        "dim": int(matrix.shape[1]),
        "bytes": written,
    }
