"""Scan a grid of starting points and write the basins as a PGM image.

Gray levels: 0 -> (0,0), 255 -> (1,1), 128 -> interior point, 192 -> other
limit, 64 -> unresolved.  The image opens in most viewers.
"""
import sys
from pathlib import Path

import numpy as np

from dioecy import BasinLabel, FitnessParams, scan_basins
from dioecy.cli import render_legend, render_pgm

n = int(sys.argv[1]) if len(sys.argv) > 1 else 101
out = Path(sys.argv[2] if len(sys.argv) > 2 else "basins.pgm")

p = FitnessParams(1.0, 1, 4, 1, 1, 4)
raster = scan_basins(p, n, workers=2)
for label in BasinLabel:
    count = int(np.count_nonzero(raster.labels == label))
    if count:
        print(f"{label.name:<10} {count:6d} nodes  ({count / n**2:.1%})")

out.write_text(render_pgm(raster.labels))
out.with_suffix(".csv").write_text(render_legend(raster))
print("wrote", out, "and", out.with_suffix(".csv"))

# bottom-left corner is the origin, top-right is (1, 1)
print(raster.labels[0, 0], raster.labels[-1, -1])
