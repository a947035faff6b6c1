"""RGBA raster buffers plus the compositing primitives used to assemble icons."""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image


class Raster:
    """An 8-bit RGBA image stored as a (height, width, 4) numpy array."""

    __slots__ = ("pixels",)

    def __init__(self, pixels: np.ndarray):
        pixels = np.asarray(pixels, dtype=np.uint8)
        if pixels.ndim != 3 or pixels.shape[2] != 4:
            raise ValueError(f"expected an (h, w, 4) RGBA array, got shape {pixels.shape}")
        if pixels.shape[0] < 1 or pixels.shape[1] < 1:
            raise ValueError("raster must be at least 1x1")
        self.pixels = pixels

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @classmethod
    def blank(cls, width: int, height: int) -> "Raster":
        """Fully transparent canvas."""
        return cls(np.zeros((height, width, 4), dtype=np.uint8))

    @classmethod
    def solid(cls, width: int, height: int, rgba: tuple[int, int, int, int]) -> "Raster":
        px = np.empty((height, width, 4), dtype=np.uint8)
        px[:, :] = rgba
        return cls(px)

    @classmethod
    def open(cls, path) -> "Raster":
        with Image.open(path) as im:
            return cls(np.asarray(im.convert("RGBA"), dtype=np.uint8))

    def save(self, path) -> None:
        Image.fromarray(self.pixels, mode="RGBA").save(path)

    def copy(self) -> "Raster":
        return Raster(self.pixels.copy())

    def __eq__(self, other):
        return isinstance(other, Raster) and np.array_equal(self.pixels, other.pixels)

    def __repr__(self):
        return f"Raster({self.width}x{self.height})"


def resize_nearest(src: Raster, width: int, height: int) -> Raster:
    """Nearest-neighbor resample; destination index i maps to floor(i * src / dst)."""
    if width < 1 or height < 1:
        raise ValueError("target size must be at least 1x1")
    ys = (np.arange(height) * src.height) // height
    xs = (np.arange(width) * src.width) // width
    return Raster(src.pixels[np.ix_(ys, xs)])


class AssetLoader:
    """Resolves component image references against a base directory, with caching."""

    def __init__(self, base_dir="."):
        self.base_dir = Path(base_dir)
        self._cache: dict[str, Raster] = {}

    def load(self, ref: str) -> Raster:
        if ref not in self._cache:
            path = Path(ref)
            if not path.is_absolute():
                path = self.base_dir / path
            self._cache[ref] = Raster.open(path)
        return self._cache[ref]


class MemoryAssets:
    """In-memory asset table keyed by reference string."""

    def __init__(self, images: dict[str, Raster] | None = None):
        self.images = dict(images or {})

    def load(self, ref: str) -> Raster:
        if ref not in self.images:
            raise OSError(f"unknown image asset {ref!r}")
        return self.images[ref]


def composite_over(dest: Raster, src: Raster, x: int, y: int) -> None:
    """Source-over alpha compositing of src onto dest at integer offset (x, y), in place.

    Fully opaque source pixels replace the destination exactly; the overlapping
    region is clipped to the destination bounds.
    """
    dx0, dy0 = max(x, 0), max(y, 0)
    dx1 = min(x + src.width, dest.width)
    dy1 = min(y + src.height, dest.height)
    if dx0 >= dx1 or dy0 >= dy1:
        return
    s = src.pixels[dy0 - y:dy1 - y, dx0 - x:dx1 - x].astype(np.float64)
    d = dest.pixels[dy0:dy1, dx0:dx1].astype(np.float64)
    sa = s[:, :, 3:4] / 255.0
    da = d[:, :, 3:4] / 255.0
    oa = sa + da * (1.0 - sa)
    with np.errstate(divide="ignore", invalid="ignore"):
        rgb = (s[:, :, :3] * sa + d[:, :, :3] * da * (1.0 - sa)) / oa
    rgb[np.repeat(oa == 0.0, 3, axis=2)] = 0.0
    out = np.concatenate([rgb, oa * 255.0], axis=2)
    dest.pixels[dy0:dy1, dx0:dx1] = np.clip(np.rint(out), 0, 255).astype(np.uint8)
