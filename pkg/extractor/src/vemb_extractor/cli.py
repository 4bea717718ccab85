"""CLI: vemb-extract --video in.mp4 --out out.vemb [--target-fps 4]
[--model vit:facebook/dino-vitb16 | dummy]"""

from __future__ import annotations

import argparse
import sys

from .extract import ExtractError, extract


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="vemb-extract", description=__doc__)
    parser.add_argument("--video", required=True)
    parser.add_argument("--out", required=True)
    parser.add_argument("--target-fps", type=float, default=4.0)
    parser.add_argument("--model", default="vit:facebook/dino-vitb16",
                        help="vit:<hf-checkpoint> for class-token embeddings, "
                             "or dummy[:dim] for offline pixel statistics")
    args = parser.parse_args(argv)
    try:
        info = extract(args.video, args.out, target_fps=args.target_fps,
                       model_id=args.model)
    except ExtractError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"{info['video']}: {info['samples']} samples x {info['dim']} dims "
          f"({info['total_frames']} frames @ {info['fps']:.3f} fps) -> {info['out']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
