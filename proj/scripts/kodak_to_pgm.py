#!/usr/bin/env python3
"""Convert colour images (e.g. the 24 Kodak PNGs) to 8-bit luminance PGMs.

Luminance is Y = 0.299 R + 0.587 G + 0.114 B, rounded to the nearest integer.

usage: kodak_to_pgm.py SRC_DIR DST_DIR
"""
import sys
from pathlib import Path

import numpy as np
from PIL import Image


def main() -> int:
    if len(sys.argv) != 3:
        print(__doc__, file=sys.stderr)
        return 1
    src, dst = Path(sys.argv[1]), Path(sys.argv[2])
    dst.mkdir(parents=True, exist_ok=True)
    files = sorted(p for p in src.iterdir() if p.suffix.lower() in {".png", ".ppm", ".bmp", ".tif", ".tiff"})
    if not files:
        print(f"no images in {src}", file=sys.stderr)
        return 2
    for path in files:
        rgb = np.asarray(Image.open(path).convert("RGB"), dtype=np.float64)
        y = rgb @ np.array([0.299, 0.587, 0.114])
        Image.fromarray(np.clip(np.floor(y + 0.5), 0, 255).astype(np.uint8), mode="L").save(
            dst / (path.stem + ".pgm"))
    print(f"wrote {len(files)} images to {dst}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
