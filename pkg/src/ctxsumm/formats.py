"""File formats: VEMB binary embeddings, JSON dataset manifests, summary
documents.

VEMB v1 layout (all little-endian):

    magic "VEMB" | u32 version=1 | u32 sample_count | u32 dim
    | f64 input_fps | f64 sample_fps | u64 total_frames
    | sample_count x u64 sample indexes (1-based)
    | sample_count*dim x f32 embeddings, row-major

Writes are canonical: the same set always produces the same bytes.
"""

from __future__ import annotations

import json
import struct
from typing import BinaryIO

import numpy as np

from .types import (
    DatasetManifest,
    EmbeddingSet,
    ManifestVideo,
    SummarySelection,
    ValidationError,
    VideoMeta,
)

VEMB_MAGIC = b"VEMB"
VEMB_VERSION = 1
_HEADER = struct.Struct("<4sIIIddQ")

MANIFEST_SCHEMA_VERSION = 1
SUMMARY_SCHEMA_VERSION = 1


class FormatError(ValueError):
    """Raised on malformed input documents or streams."""


# ---------------------------------------------------------------------------
# VEMB


def write_embeddings(emb: EmbeddingSet, sink: BinaryIO) -> int:
    """Serialize an embedding set as VEMB v1; returns the byte count."""
    header = _HEADER.pack(
        VEMB_MAGIC,
        VEMB_VERSION,
        emb.sample_count,
        emb.dim,
        float(emb.input_fps),
        float(emb.sample_fps),
        emb.total_frames,
    )
    indexes = emb.sample_indexes.astype("<u8").tobytes()
    payload = np.ascontiguousarray(emb.matrix, dtype="<f4").tobytes()
    sink.write(header)
    sink.write(indexes)
    sink.write(payload)
    return len(header) + len(indexes) + len(payload)


def _read_exact(source: BinaryIO, n: int, what: str) -> bytes:
    buf = source.read(n)
    if len(buf) != n:
        raise FormatError(f"truncated VEMB stream while reading {what}")
    return buf


def read_embeddings(source: BinaryIO) -> EmbeddingSet:
    """Parse a VEMB v1 stream into a validated embedding set."""
    magic, version, count, dim, input_fps, sample_fps, total = _HEADER.unpack(
        _read_exact(source, _HEADER.size, "header")
    )
    if magic != VEMB_MAGIC:
        raise FormatError(f"bad magic {magic!r}, expected {VEMB_MAGIC!r}")
    if version != VEMB_VERSION:
        raise FormatError(f"unsupported VEMB version {version}")
    indexes = np.frombuffer(_read_exact(source, 8 * count, "sample indexes"), dtype="<u8")
    matrix = np.frombuffer(
        _read_exact(source, 4 * count * dim, "embedding payload"), dtype="<f4"
    ).reshape(count, dim)
    if np.any(np.diff(indexes.astype(np.int64)) <= 0):
        raise FormatError("sample indexes not strictly increasing")
    try:
        return EmbeddingSet(
            total_frames=int(total),
            input_fps=input_fps,
            sample_fps=sample_fps,
            sample_indexes=indexes.astype(np.int64),
            matrix=matrix.astype(np.float64),
        )
    except ValidationError as exc:
        raise FormatError(str(exc)) from exc


def read_embeddings_file(path) -> EmbeddingSet:
    with open(path, "rb") as fh:
        return read_embeddings(fh)


def write_embeddings_file(emb: EmbeddingSet, path) -> int:
    with open(path, "wb") as fh:
        return write_embeddings(emb, fh)


# ---------------------------------------------------------------------------
# Dataset manifest


def load_manifest(text: str) -> DatasetManifest:
    """Parse and validate a JSON dataset manifest.

    Schema: ``{schema_version, videos: [{id, total_frames, fps,
    segments: [[start, end] ...] (1-based inclusive),
    user_summaries: [[frame ...] ...]}]}``.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"manifest is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise FormatError("manifest root must be an object")
    if doc.get("schema_version") != MANIFEST_SCHEMA_VERSION:
        raise FormatError(f"manifest schema_version must be {MANIFEST_SCHEMA_VERSION}")
    videos = []
    for entry in doc.get("videos", []):
        try:
            meta = VideoMeta(
                video_id=str(entry["id"]),
                total_frames=int(entry["total_frames"]),
                input_fps=float(entry["fps"]),
            )
            video = ManifestVideo(
                meta=meta,
                segments=tuple((int(a), int(b)) for a, b in entry["segments"]),
                user_summaries=tuple(
                    frozenset(int(i) for i in u) for u in entry.get("user_summaries", [])
                ),
            )
        except (KeyError, TypeError) as exc:
            raise FormatError(f"malformed video entry: {exc}") from exc
        except ValidationError as exc:
            raise FormatError(str(exc)) from exc
        videos.append(video)
    if not videos:
        raise FormatError("manifest contains no videos")
    return DatasetManifest(videos=tuple(videos))


def load_manifest_file(path) -> DatasetManifest:
    with open(path, "r", encoding="utf-8") as fh:
        return load_manifest(fh.read())


def dump_manifest(manifest: DatasetManifest) -> str:
    doc = {
        "schema_version": MANIFEST_SCHEMA_VERSION,
        "videos": [
            {
                "id": v.meta.video_id,
                "total_frames": v.meta.total_frames,
                "fps": v.meta.input_fps,
                "segments": [list(s) for s in v.segments],
                "user_summaries": [sorted(u) for u in v.user_summaries],
            }
            for v in manifest.videos
        ],
    }
    return json.dumps(doc, indent=2)


# ---------------------------------------------------------------------------
# Summary documents


def encode_runs(bits) -> list:
    """Run-length encode a binary sequence as [[bit, count], ...]."""
    runs: list = []
    for b in bits:
        b = int(b)
        if runs and runs[-1][0] == b:
            runs[-1][1] += 1
        else:
            runs.append([b, 1])
    return runs


def decode_runs(runs) -> np.ndarray:
    out: list[int] = []
    for bit, count in runs:
        out.extend([int(bit)] * int(count))
    return np.asarray(out, dtype=np.int8)


def summary_to_doc(video_id: str, selection: SummarySelection, importances=None) -> dict:
    doc = {
        "schema_version": SUMMARY_SCHEMA_VERSION,
        "video_id": video_id,
        "total_frames": selection.total_frames,
        "budget_frames": selection.budget_frames,
        "selected_frames": list(selection.selected_frames),
        "selection_bits": encode_runs(selection.selection_vector),
    }
    if importances is not None:
        doc["importances"] = [float(x) for x in importances]
    return doc


def summary_from_doc(doc: dict) -> SummarySelection:
    if doc.get("schema_version") != SUMMARY_SCHEMA_VERSION:
        raise FormatError("unsupported summary document version")
    selection = SummarySelection(
        selected_frames=tuple(doc["selected_frames"]),
        total_frames=int(doc["total_frames"]),
        budget_frames=int(doc["budget_frames"]),
    )
    bits = decode_runs(doc["selection_bits"])
    if not np.array_equal(bits, selection.selection_vector):
        raise FormatError("selection_bits disagree with selected_frames")
    return selection
