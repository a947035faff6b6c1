"""Vectorize a raster icon: border tracing, polygon fitting, Bezier smoothing.

Starts from pixels (a ring with a punched-out center, plus a dot), walks the
black/white borders into closed paths, fits each path with the fewest chords
that stay within one pixel of the boundary, rounds the corners with cubics,
and prints the finished SVG.

Run: python3 demos/02_trace_glyph.py
"""
import numpy as np

from iconforge import (Raster, approximate_polygon, binarize, enclosed_area,
                       smooth_polygon, svg_document, trace_paths)

SIZE = 24


def disk(cx: float, cy: float, r: float) -> np.ndarray:
    yy, xx = np.ogrid[:SIZE, :SIZE]
    return (xx - cx) ** 2 + (yy - cy) ** 2 <= r * r


# Draw into an RGBA raster the way an exported icon would arrive, then
# threshold it back to a bitmap: dark enough and opaque enough counts as ink.
mask = disk(8.5, 8.5, 7.5) & ~disk(8.5, 8.5, 4.0) | disk(18.5, 18.5, 3.5)
pixels = np.zeros((SIZE, SIZE, 4), dtype=np.uint8)
pixels[mask] = (30, 30, 30, 255)
bitmap = binarize(Raster(pixels))
print(f"bitmap: {bitmap.bits.shape[1]}x{bitmap.bits.shape[0]}, "
      f"{bitmap.black_count} ink pixels")

paths = trace_paths(bitmap)
print(f"traced {len(paths)} closed border paths")

outlines = []
for path in paths:
    # Signed area tells outer boundary (positive) from hole (negative).
    area = enclosed_area(path)
    poly = approximate_polygon(path, d_max=1.0)
    kind = "outline" if area > 0 else "hole"
    print(f"  {kind:7s} {len(path.points) - 1:3d} points -> "
          f"{len(poly.vertices)} vertices, encloses {area:.0f} px")
    outlines.append(smooth_polygon(poly, smoothness=0.75))

svg = svg_document(outlines, SIZE, SIZE)
print(f"\nsvg ({len(svg)} bytes, nonzero fill keeps the hole open):")
print(svg)
