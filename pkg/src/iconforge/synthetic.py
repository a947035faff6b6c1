"""Deterministic synthetic corpora for the evaluation harness.

The benchmark artifacts mimic app screens: each icon is a small group of
same-kind, mutually overlapping leaves, surrounded by text labels, full-width
divider shapes, and a full-canvas background bitmap. Ground truth is the set
of member ids per icon group.
"""

from __future__ import annotations

import json

import numpy as np

from .artifact import DesignArtifact, parse_artifact
from .metrics import CompositionTruth
from .raster import Raster


def _leaf(name: str, kind: str, x: float, y: float, w: float, h: float, text=None) -> dict:
    node: dict = {"name": name, "kind": kind, "frame": {"x": x, "y": y, "w": w, "h": h}}
    if text is not None:
        node["text"] = text
    return node


def _icon_group(rng: np.random.Generator, name: str, cx: float, cy: float,
                count: int | None = None) -> dict:
    kind = "bitmap" if rng.integers(0, 2) == 0 else "shape"
    if count is None:
        count = int(rng.integers(2, 5))
    size = int(rng.integers(28, 45))
    members = []
    for m in range(count):
        dx = int(rng.integers(-10, 11))
        dy = int(rng.integers(-10, 11))
        # offsets stay under half the size, so every member pair overlaps
        members.append(_leaf(f"{name}-part{m}", kind, cx + dx, cy + dy, size, size))
    xs = [mm["frame"]["x"] for mm in members]
    ys = [mm["frame"]["y"] for mm in members]
    x0, y0 = min(xs), min(ys)
    x1 = max(mm["frame"]["x"] + mm["frame"]["w"] for mm in members)
    y1 = max(mm["frame"]["y"] + mm["frame"]["h"] for mm in members)
    return {"name": name, "kind": "group",
            "frame": {"x": x0, "y": y0, "w": x1 - x0, "h": y1 - y0},
            "children": members}


def make_benchmark_artifact(seed: int, index: int = 0) -> tuple[DesignArtifact, CompositionTruth]:
    """One screen with 2-5 icons plus text/divider/background distractors."""
    rng = np.random.default_rng((seed, index))
    width, height = 800, 600
    cells = [(40 + 180 * c, 40 + 140 * r) for r in range(3) for c in range(4)]
    rng.shuffle(cells)

    n_icons = int(rng.integers(2, 6))
    n_texts = int(rng.integers(2, 5))
    n_dividers = int(rng.integers(1, 3))

    children: list[dict] = [_leaf("background", "bitmap", 0, 0, width, height)]
    for i in range(n_icons):
        cx, cy = cells[i]
        children.append(_icon_group(rng, f"icon-{i}", cx + 20, cy + 20))
    for t in range(n_texts):
        cx, cy = cells[n_icons + t]
        children.append(_leaf(f"caption-{t}", "text", cx, cy + 90,
                              int(rng.integers(50, 120)), 16, text=f"Caption {t}"))
    for d in range(n_dividers):
        children.append(_leaf(f"divider-{d}", "shape", 0, 520 + 30 * d, width, 2))

    doc = {"name": f"screen-{index}", "width": width, "height": height,
           "root": {"name": "root", "kind": "group",
                    "frame": {"x": 0, "y": 0, "w": width, "h": height},
                    "children": children}}
    artifact = parse_artifact(json.dumps(doc))

    icons = []
    for node in artifact.nodes():
        if node.kind == "group" and node.name.startswith("icon-"):
            icons.append(frozenset(child.id for child in node.children))
    return artifact, CompositionTruth(icons=icons)


def make_benchmark_suite(seed: int = 20, count: int = 20):
    """The standard composition benchmark: 20 seeded screens with ground truth."""
    return [make_benchmark_artifact(seed, index) for index in range(count)]


def make_stress_artifact(seed: int = 7, components: int = 500) -> DesignArtifact:
    """A single large screen with roughly `components` leaf components."""
    rng = np.random.default_rng(seed)
    n_dividers = 4
    n_icons = max(2, components // 8)
    member_budget = components - 1 - n_dividers
    icon_members = 3
    n_texts = member_budget - n_icons * icon_members
    if n_texts < 0:
        n_icons = member_budget // (icon_members + 1)
        n_texts = member_budget - n_icons * icon_members

    cells_needed = n_icons + n_texts
    cols = int(np.ceil(np.sqrt(cells_needed)))
    rows = int(np.ceil(cells_needed / cols))
    pitch = 150
    width = cols * pitch + 80
    height = rows * pitch + 200
    cells = [(40 + pitch * (k % cols), 40 + pitch * (k // cols)) for k in range(cells_needed)]

    children: list[dict] = [_leaf("background", "bitmap", 0, 0, width, height)]
    for i in range(n_icons):
        cx, cy = cells[i]
        # fixed member count so the leaf total lands exactly on `components`
        children.append(_icon_group(rng, f"icon-{i}", cx + 20, cy + 20, count=icon_members))
    for t in range(n_texts):
        cx, cy = cells[n_icons + t]
        children.append(_leaf(f"caption-{t}", "text", cx, cy + 90,
                              int(rng.integers(50, 120)), 16, text=f"Caption {t}"))
    for d in range(n_dividers):
        children.append(_leaf(f"divider-{d}", "shape", 0, rows * pitch + 60 + 20 * d, width, 2))

    doc = {"name": "stress-screen", "width": width, "height": height,
           "root": {"name": "root", "kind": "group",
                    "frame": {"x": 0, "y": 0, "w": width, "h": height},
                    "children": children}}
    return parse_artifact(json.dumps(doc))


COLOR_CLASSES: tuple[tuple[str, tuple[int, int, int]], ...] = (
    ("brick", (200, 40, 40)),
    ("grass", (40, 200, 40)),
    ("sea", (40, 40, 200)),
    ("sun", (230, 210, 40)),
    ("sky", (60, 200, 230)),
    ("plum", (180, 40, 200)),
    ("slate", (90, 100, 110)),
    ("sand", (210, 180, 120)),
    ("rust", (190, 110, 30)),
    ("pine", (20, 110, 70)),
)


def make_color_dataset(seed: int = 11, train_per_class: int = 200, test_per_class: int = 100,
                       size: int = 32, noise: int = 10):
    """Noisy solid-color rasters for classifier benchmarks.

    Returns (train, test) lists of (raster, label); every pixel gets uniform
    noise in [-noise, +noise] per channel.
    """
    rng = np.random.default_rng(seed)

    def sample(base: tuple[int, int, int]) -> Raster:
        px = np.empty((size, size, 4), dtype=np.int16)
        px[:, :, :3] = base
        px[:, :, :3] += rng.integers(-noise, noise + 1, size=(size, size, 3), dtype=np.int16)
        px[:, :, 3] = 255
        return Raster(np.clip(px, 0, 255).astype(np.uint8))

    train, test = [], []
    for label, base in COLOR_CLASSES:
        train.extend((sample(base), label) for _ in range(train_per_class))
        test.extend((sample(base), label) for _ in range(test_per_class))
    return train, test
