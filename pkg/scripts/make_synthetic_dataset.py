#!/usr/bin/env python3
"""Generate a synthetic block-blob dataset (VEMB files + manifest) for
pipeline experiments without real media.

Usage: make_synthetic_dataset.py OUT_DIR [--videos N] [--seed S]
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from ctxsumm import formats
from ctxsumm.synthetic import make_block_dataset


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("out_dir")
    parser.add_argument("--videos", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    shapes = [
        {"block_lengths": (160, 40, 80, 40, 80), "important_blocks": (0,)},
        {"block_lengths": (60, 140, 60, 80, 60), "important_blocks": (1,)},
        {"block_lengths": (80, 40, 160, 40, 80), "important_blocks": (2,)},
    ]
    specs = [
        {"video_id": f"blockvid-{i}", **shapes[i % len(shapes)]}
        for i in range(args.videos)
    ]
    manifest, embeddings, truths = make_block_dataset(specs, seed=args.seed)

    out = Path(args.out_dir)
    (out / "embeddings").mkdir(parents=True, exist_ok=True)
    for vid, emb in embeddings.items():
        formats.write_embeddings_file(emb, out / "embeddings" / f"{vid}.vemb")
    (out / "manifest.json").write_text(formats.dump_manifest(manifest), encoding="utf-8")
    for vid, truth in truths.items():
        print(f"{vid}: boundaries at samples {truth.boundary_samples}, "
              f"important blocks {truth.important_blocks}")
    print(f"wrote {len(embeddings)} videos under {out}")


if __name__ == "__main__":
    main()
