"""Regenerate the domain/target figure and the curve CSV into notebooks/out/.

Run with ``python3 notebooks/draw_figures.py [resolution]``.
"""

import sys
import time
from pathlib import Path

from pinchuk.render import Window, curve_samples, figure, write_curve_csv

out = Path(__file__).with_name("out")
out.mkdir(exist_ok=True)
n = int(sys.argv[1]) if len(sys.argv) > 1 else 256

start = time.perf_counter()
summary = figure(out / "pinchuk.svg", Window(-10, -10, 10, 10, n))
print(summary, f"{time.perf_counter() - start:.1f} s")

write_curve_csv(out / "curve_C.csv", curve_samples(-4, 2, 121))
print("wrote", sorted(p.name for p in out.iterdir()))
