"""Primary color detection over HSV masks.

Hue lives in [0, 180), saturation and value in [0, 255] (half-degree hue keeps
the full circle inside a byte). Each named mask counts the opaque pixels whose
HSV falls inside its band; the primary color is the mask with the highest
ratio, ties resolved by listing order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .raster import Raster

OPAQUE_ALPHA = 128


@dataclass(frozen=True)
class Hsv:
    h: int
    s: int
    v: int


@dataclass(frozen=True)
class ColorMask:
    """Inclusive HSV ranges; hue may span several bands (red wraps the circle)."""

    name: str
    h_ranges: tuple[tuple[int, int], ...]
    s_range: tuple[int, int]
    v_range: tuple[int, int]

    def match(self, h: np.ndarray, s: np.ndarray, v: np.ndarray) -> np.ndarray:
        hit = np.zeros(h.shape, dtype=bool)
        for lo, hi in self.h_ranges:
            hit |= (h >= lo) & (h <= hi)
        hit &= (s >= self.s_range[0]) & (s <= self.s_range[1])
        hit &= (v >= self.v_range[0]) & (v <= self.v_range[1])
        return hit


_FULL_H = ((0, 180),)
_CHROMA_S = (43, 255)
_CHROMA_V = (46, 255)

# Listing order doubles as the tie-break order.
DEFAULT_MASKS: tuple[ColorMask, ...] = (
    ColorMask("black", _FULL_H, (0, 255), (0, 46)),
    ColorMask("blue", ((100, 124),), _CHROMA_S, _CHROMA_V),
    ColorMask("cyan", ((78, 99),), _CHROMA_S, _CHROMA_V),
    ColorMask("green", ((41, 77),), _CHROMA_S, _CHROMA_V),
    ColorMask("lime", ((26, 40),), _CHROMA_S, _CHROMA_V),
    ColorMask("magenta", ((125, 155),), _CHROMA_S, _CHROMA_V),
    ColorMask("red", ((0, 10), (156, 180)), _CHROMA_S, _CHROMA_V),
    ColorMask("white", _FULL_H, (0, 30), (221, 255)),
)

# Representative RGB per mask, used for CSS color classes and test swatches.
CANONICAL_RGB: dict[str, tuple[int, int, int]] = {
    "black": (0, 0, 0),
    "blue": (0, 0, 255),
    "cyan": (0, 255, 255),
    "green": (0, 255, 0),
    "lime": (191, 255, 0),
    "magenta": (255, 0, 255),
    "red": (255, 0, 0),
    "white": (255, 255, 255),
}


def _hsv_arrays(r: np.ndarray, g: np.ndarray, b: np.ndarray):
    rf = r.astype(np.float64)
    gf = g.astype(np.float64)
    bf = b.astype(np.float64)
    mx = np.maximum(np.maximum(rf, gf), bf)
    mn = np.minimum(np.minimum(rf, gf), bf)
    delta = mx - mn

    with np.errstate(divide="ignore", invalid="ignore"):
        hr = np.mod((gf - bf) / delta, 6.0)
        hg = (bf - rf) / delta + 2.0
        hb = (rf - gf) / delta + 4.0
    deg = np.where(mx == rf, hr, np.where(mx == gf, hg, hb)) * 60.0
    deg = np.where(delta == 0.0, 0.0, deg)

    h = np.mod(np.rint(deg / 2.0), 180.0).astype(np.int64)
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(mx == 0.0, 0.0, np.rint(255.0 * delta / mx)).astype(np.int64)
    v = mx.astype(np.int64)
    return h, s, v


def rgb_to_hsv(r: int, g: int, b: int) -> Hsv:
    """Convert one 8-bit RGB triple to integer HSV."""
    for c in (r, g, b):
        if not 0 <= c <= 255:
            raise ValueError(f"channel {c} out of [0, 255]")
    h, s, v = _hsv_arrays(np.array([r]), np.array([g]), np.array([b]))
    return Hsv(int(h[0]), int(s[0]), int(v[0]))


@dataclass
class ColorReport:
    """Per-mask opaque-pixel ratios; primary is None when nothing is opaque."""

    ratios: dict[str, float]
    primary: str | None
    opaque_count: int


def primary_color(raster: Raster, masks: tuple[ColorMask, ...] | None = None) -> ColorReport:
    """Detect the dominant named color among opaque pixels (alpha >= 128)."""
    if masks is None:
        masks = DEFAULT_MASKS
    if not masks:
        raise ValueError("need at least one color mask")
    px = raster.pixels
    opaque = px[:, :, 3] >= OPAQUE_ALPHA
    count = int(opaque.sum())
    if count == 0:
        return ColorReport(ratios={mask.name: 0.0 for mask in masks},
                           primary=None, opaque_count=0)
    r = px[:, :, 0][opaque]
    g = px[:, :, 1][opaque]
    b = px[:, :, 2][opaque]
    h, s, v = _hsv_arrays(r, g, b)
    ratios = {mask.name: float(mask.match(h, s, v).sum()) / count for mask in masks}
    primary = max(range(len(masks)), key=lambda i: (ratios[masks[i].name], -i))
    return ColorReport(ratios=ratios, primary=masks[primary].name, opaque_count=count)


def _parse_range(obj, what: str) -> tuple[int, int]:
    if (not isinstance(obj, list)) or len(obj) != 2:
        raise ValueError(f"{what} must be a [lo, hi] pair")
    lo, hi = int(obj[0]), int(obj[1])
    if lo > hi:
        raise ValueError(f"{what} range [{lo}, {hi}] is inverted")
    return lo, hi


def load_masks(text: str) -> tuple[ColorMask, ...]:
    """Parse a mask override document: a JSON list of named HSV range entries."""
    doc = json.loads(text)
    if not isinstance(doc, list) or not doc:
        raise ValueError("mask override must be a non-empty JSON list")
    masks = []
    for entry in doc:
        if not isinstance(entry, dict) or "name" not in entry:
            raise ValueError("each mask needs a 'name'")
        h_ranges = entry.get("h")
        if not isinstance(h_ranges, list) or not h_ranges:
            raise ValueError(f"mask {entry['name']!r} needs at least one h range")
        masks.append(ColorMask(
            name=str(entry["name"]),
            h_ranges=tuple(_parse_range(r, "h") for r in h_ranges),
            s_range=_parse_range(entry.get("s", [0, 255]), "s"),
            v_range=_parse_range(entry.get("v", [0, 255]), "v"),
        ))
    return tuple(masks)
