"""SVG and PGM rendering of interval and box covers.

Rounding to the pixel grid is outward and exact (Scalar floor/ceil), so a
rendered image never hides covered area.  Identical inputs give identical
bytes.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .cover1d import IntervalCover
from .cover2d import BoxCover
from .errors import ViewportDegenerate
from .scalar import ONE, ZERO, Scalar, as_scalar

Viewport = Tuple[Scalar, Scalar, Scalar, Scalar]  # xmin, xmax, ymin, ymax
PixelRect = Tuple[int, int, int, int]  # col0, row0, col1, row1 (half-open)


def _boxes(cover: Union[BoxCover, IntervalCover]) -> List[Tuple[Scalar, Scalar, Scalar, Scalar]]:
    if isinstance(cover, IntervalCover):
        return [(lo, hi, ZERO, ONE) for lo, hi in cover.intervals]
    return list(cover.boxes)


def default_viewport(cover: Union[BoxCover, IntervalCover]) -> Viewport:
    """Hull of the cover padded by 1/20 of its larger side (unit box when empty)."""
    boxes = _boxes(cover)
    if not boxes:
        return ZERO, ONE, ZERO, ONE
    x0 = min(b[0] for b in boxes)
    x1 = max(b[1] for b in boxes)
    y0 = min(b[2] for b in boxes)
    y1 = max(b[3] for b in boxes)
    side = max(x1 - x0, y1 - y0)
    pad = side / 20 if side.sign() > 0 else ONE / 2
    return x0 - pad, x1 + pad, y0 - pad, y1 + pad


def _check(viewport: Viewport, width: int, height: int) -> Viewport:
    if width <= 0 or height <= 0:
        raise ViewportDegenerate(f"pixel size must be positive, got {width}x{height}")
    vp = tuple(as_scalar(v) for v in viewport)
    if not (vp[0] < vp[1] and vp[2] < vp[3]):
        raise ViewportDegenerate("viewport has zero or negative extent")
    return vp


def pixel_rects(cover: Union[BoxCover, IntervalCover], viewport: Viewport, width: int, height: int) -> List[PixelRect]:
    """Sorted distinct pixel rectangles, each at least one pixel, clipped to the image."""
    x0, x1, y0, y1 = _check(viewport, width, height)
    sx = Scalar(width) / (x1 - x0)
    sy = Scalar(height) / (y1 - y0)
    rects = set()
    for bx0, bx1, by0, by1 in _boxes(cover):
        if bx1 < x0 or bx0 > x1 or by1 < y0 or by0 > y1:
            continue
        c0 = ((bx0 - x0) * sx).floor()
        c1 = ((bx1 - x0) * sx).ceil()
        r0 = ((y1 - by1) * sy).floor()  # rows grow downward
        r1 = ((y1 - by0) * sy).ceil()
        c1, r1 = max(c1, c0 + 1), max(r1, r0 + 1)
        c0, r0 = max(c0, 0), max(r0, 0)
        c1, r1 = min(c1, width), min(r1, height)
        if c0 < c1 and r0 < r1:
            rects.add((c0, r0, c1, r1))
    return sorted(rects)


def render_svg(cover, viewport: Optional[Viewport] = None, width: int = 512, height: int = 512, title: str = "") -> bytes:
    vp = default_viewport(cover) if viewport is None else viewport
    rects = pixel_rects(cover, vp, width, height)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}" shape-rendering="crispEdges">',
    ]
    if title:
        out.append(f"<title>{_escape(title)}</title>")
    out.append(f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>')
    out.append('<g fill="#000000">')
    for c0, r0, c1, r1 in rects:
        out.append(f'<rect x="{c0}" y="{r0}" width="{c1 - c0}" height="{r1 - r0}"/>')
    out.append("</g>")
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")


def render_pgm(cover, viewport: Optional[Viewport] = None, width: int = 512, height: int = 512) -> bytes:
    vp = default_viewport(cover) if viewport is None else viewport
    img = np.full((height, width), 255, dtype=np.uint8)
    for c0, r0, c1, r1 in pixel_rects(cover, vp, width, height):
        img[r0:r1, c0:c1] = 0
    return f"P5\n{width} {height}\n255\n".encode("ascii") + img.tobytes()


def render_cover(cover, viewport: Optional[Viewport] = None, width: int = 512, height: int = 512, fmt: str = "svg") -> bytes:
    if fmt == "svg":
        return render_svg(cover, viewport, width, height)
    if fmt == "pgm":
        return render_pgm(cover, viewport, width, height)
    raise ValueError(f"unknown image format {fmt!r}")


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
