"""VEMB v1 writer.

Layout (little-endian): "VEMB" | u32 version=1 | u32 sample_count |
u32 dim | f64 input_fps | f64 sample_fps | u64 total_frames |
sample_count x u64 1-based indexes | sample_count*dim x f32 row-major.
"""

from __future__ import annotations

import struct

import numpy as np

MAGIC = b"VEMB"
VERSION = 1
_HEADER = struct.Struct("<4sIIIddQ")


def write_vemb(
    path,
    matrix: np.ndarray,
    sample_indexes: np.ndarray,
    total_frames: int,
    input_fps: float,
    sample_fps: float,
) -> int:
    matrix = np.asarray(matrix, dtype=np.float64)
    idx = np.asarray(sample_indexes, dtype=np.int64)
    if matrix.ndim != 2 or len(idx) != matrix.shape[0]:
        raise ValueError("matrix rows and sample indexes must correspond")
    if np.any(np.diff(idx) <= 0) or idx[0] < 1 or idx[-1] > total_frames:
        raise ValueError("sample indexes must be strictly increasing within [1, total]")
    if not np.all(np.isfinite(matrix)):
        raise ValueError("matrix contains non-finite entries")
    header = _HEADER.pack(
        MAGIC, VERSION, matrix.shape[0], matrix.shape[1],
        float(input_fps), float(sample_fps), int(total_frames),
    )
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(idx.astype("<u8").tobytes())
        fh.write(np.ascontiguousarray(matrix, dtype="<f4").tobytes())
    return _HEADER.size + 8 * len(idx) + 4 * matrix.size
