"""Bitmap-to-Bezier tracing.

The pipeline: composite a cluster's member images onto one canvas, threshold it
to a binary bitmap, walk every black/white border on the pixel-corner lattice,
fit each border with a minimal-vertex polygon, and round the polygon corners
with one cubic Bezier per vertex.

Border walking keeps black on the left of travel. After a border closes, the
enclosed region is XOR-inverted and scanning continues, which peels nested
boundaries (holes, islands) one at a time. At an ambiguous 2x2 checkerboard
junction the walk always turns left, so tangent regions split deterministically
into separate paths.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .raster import Raster, composite_over, resize_nearest

PUA_START = 0xE000

# Pixel flanking a unit step that starts at lattice point (x, y) and moves in
# direction d, with y growing downward. Offsets add to the step's start point.
_LEFT_PIXEL = {(1, 0): (0, -1), (0, 1): (0, 0), (-1, 0): (-1, 0), (0, -1): (-1, -1)}
_RIGHT_PIXEL = {(1, 0): (0, 0), (0, 1): (-1, 0), (-1, 0): (-1, -1), (0, -1): (0, -1)}
_LEFT_TURN = {(1, 0): (0, -1), (0, -1): (-1, 0), (-1, 0): (0, 1), (0, 1): (1, 0)}
_RIGHT_TURN = {(1, 0): (0, 1), (0, 1): (-1, 0), (-1, 0): (0, -1), (0, -1): (1, 0)}

# Boundaries longer than this skip the exact minimal-vertex search; see
# _greedy_polygon. Real icons stay far below it.
_DP_POINT_LIMIT = 1200


class BinaryBitmap:
    """Boolean pixel grid; True means black."""

    __slots__ = ("bits",)

    def __init__(self, bits: np.ndarray):
        bits = np.asarray(bits, dtype=bool)
        if bits.ndim != 2:
            raise ValueError(f"expected a 2-d boolean array, got shape {bits.shape}")
        self.bits = bits

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    @property
    def black_count(self) -> int:
        return int(self.bits.sum())


@dataclass(frozen=True)
class DirectedPath:
    """Closed border path on pixel corners; first point equals last.

    Outer boundaries and holes run in opposite directions so that, walking the
    stored order, black pixels of the source bitmap lie to the left of travel.
    """

    points: tuple[tuple[int, int], ...]
    hole: bool = False


@dataclass(frozen=True)
class Polygon:
    """Cyclic vertex list; every vertex is a point of the source path."""

    vertices: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class BezierOutline:
    """Closed outline of cubic segments (p0, p1, p2, p3), one per polygon vertex."""

    segments: tuple[tuple[tuple[float, float], ...], ...]


def _round_half_up(v: float) -> int:
    return int(math.floor(v + 0.5))


def compose_raster(cluster, artifact, assets) -> Raster:
    """Composite a cluster's member images over a transparent canvas of its bbox.

    Members paint in document order (later ids on top) with source-over
    blending; images are nearest-neighbor scaled to their frame size.
    """
    bbox = cluster.bbox
    if bbox.w <= 0 or bbox.h <= 0:
        raise ValueError("cluster bbox has zero area")
    x0, y0 = math.floor(bbox.x), math.floor(bbox.y)
    width = math.ceil(bbox.x + bbox.w) - x0
    height = math.ceil(bbox.y + bbox.h) - y0
    canvas = Raster.blank(width, height)
    nodes = {node.id: node for node in artifact.nodes()}
    for member in sorted(cluster.members):
        node = nodes[member]
        if node.image is None:
            raise ValueError(f"component {member} ({node.name!r}) has no image asset")
        img = assets.load(node.image)
        tw = max(1, _round_half_up(node.frame.w))
        th = max(1, _round_half_up(node.frame.h))
        if (img.width, img.height) != (tw, th):
            img = resize_nearest(img, tw, th)
        composite_over(canvas, img, _round_half_up(node.frame.x) - x0, _round_half_up(node.frame.y) - y0)
    return canvas


def binarize(raster: Raster) -> BinaryBitmap:
    """Threshold on channel average: black iff (R+G+B)/3 <= 128 and alpha >= 128."""
    px = raster.pixels
    avg = px[:, :, :3].astype(np.uint16).sum(axis=2) // 3
    return BinaryBitmap((avg <= 128) & (px[:, :, 3] >= 128))


def _walk_border(work: np.ndarray, start: tuple[int, int]) -> list[tuple[int, int]]:
    """Walk one closed border from the top-left corner of `start`, black on left."""
    h, w = work.shape

    def black(px: int, py: int) -> bool:
        return 0 <= px < w and 0 <= py < h and bool(work[py, px])

    points = [start]
    x, y = start
    d = (0, 1)  # start pixel is the first black in scan order, so its west edge borders white
    limit = 4 * w * h + 8
    for _ in range(limit):
        x, y = x + d[0], y + d[1]
        points.append((x, y))
        if (x, y) == points[0]:
            return points
        for cand in (_LEFT_TURN[d], d, _RIGHT_TURN[d]):
            lo, ro = _LEFT_PIXEL[cand], _RIGHT_PIXEL[cand]
            if black(x + lo[0], y + lo[1]) and not black(x + ro[0], y + ro[1]):
                d = cand
                break
        else:
            raise RuntimeError(f"border walk lost the boundary at {(x, y)}")
    raise RuntimeError("border walk did not close")


def _xor_fill(work: np.ndarray, points: list[tuple[int, int]]) -> None:
    """Invert the region enclosed by a closed lattice path, in place."""
    h, w = work.shape
    marks = np.zeros((h, w + 1), dtype=bool)
    for (x0, y0), (x1, y1) in zip(points, points[1:]):
        if x0 == x1:
            marks[min(y0, y1), x0] ^= True
    # a pixel is inside iff an odd number of vertical path edges lie strictly
    # to its right within its row
    suffix = np.logical_xor.accumulate(marks[:, ::-1], axis=1)[:, ::-1]
    work ^= suffix[:, 1:]


def trace_paths(bitmap: BinaryBitmap) -> list[DirectedPath]:
    """Decompose a bitmap into closed border paths (outer boundaries and holes)."""
    original = bitmap.bits
    work = original.copy()
    paths: list[DirectedPath] = []
    while work.any():
        first = int(work.argmax())
        py, px = divmod(first, work.shape[1])
        points = _walk_border(work, (px, py))
        hole = not bool(original[py, px])
        _xor_fill(work, points)
        if hole:
            points = points[::-1]
        paths.append(DirectedPath(points=tuple(points), hole=hole))
    return paths


def enclosed_area(path: DirectedPath) -> int:
    """Signed pixel area: positive for outer boundaries, negative for holes."""
    s = 0
    pts = path.points
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        s += x0 * y1 - x1 * y0
    return (-s) // 2


def _arc_tables(P: np.ndarray, d_max: float) -> tuple[np.ndarray, np.ndarray]:
    """Admissibility and penalty for every cyclic arc (start index i, length L).

    An arc is admissible when every strictly-interior path point lies within
    d_max of the chord; its penalty is the mean of those distances (0 when the
    arc has no interior points).
    """
    m = len(P)
    K = np.arange(m)
    interior = (K[:, None] >= 1) & (K[:, None] < K[None, :])  # [k, L]
    adm = np.zeros((m, m), dtype=bool)
    pen = np.zeros((m, m), dtype=np.float64)
    for i in range(m):
        rel = np.roll(P, -i, axis=0) - P[i]
        len2 = (rel * rel).sum(axis=1)
        dots = rel @ rel.T
        with np.errstate(divide="ignore", invalid="ignore"):
            t = dots / len2[None, :]
        t = np.clip(np.nan_to_num(t, nan=0.0, posinf=0.0, neginf=0.0), 0.0, 1.0)
        d2 = len2[:, None] - 2.0 * t * dots + (t * t) * len2[None, :]
        dist = np.sqrt(np.maximum(d2, 0.0))
        ok = ~(interior & (dist > d_max)).any(axis=0)
        ok &= len2 > 0.0  # refuse zero-length chords (revisited point)
        ok[0] = False
        adm[i] = ok
        sums = (dist * interior).sum(axis=0)
        counts = np.maximum(K - 1, 1)
        pen[i] = np.where(ok & (K > 1), sums / counts, 0.0)
    return adm, pen


def _chain_vertices(par: np.ndarray, w: int, u: int) -> list[int]:
    chain = [u]
    while chain[-1] != w:
        chain.append(int(par[chain[-1]]))
    chain.reverse()
    return chain


def _min_arc_cycle(adm: np.ndarray, pen: np.ndarray, m: int) -> tuple[int, float, list[int]]:
    """Minimum (arc count, total penalty) cycle covering the cyclic sequence once.

    Every cycle either has a vertex at index 0 or exactly one arc wrapping past
    index 0, so anchoring a linear pass at 0 and at each wrap-arc endpoint
    covers all cases.
    """
    anchors = {0}
    for i in range(1, m):
        for off in np.nonzero(adm[i, m - i:])[0].tolist():
            anchors.add(off)

    INF = np.iinfo(np.int64).max
    best_cnt, best_pen, best_chain = INF, math.inf, None
    for w in sorted(anchors):
        cnt = np.full(m, INF, dtype=np.int64)
        pnl = np.full(m, np.inf)
        par = np.full(m, -1, dtype=np.int64)
        cnt[w] = 0
        pnl[w] = 0.0
        for u in range(w, m):
            cu = cnt[u]
            if cu == INF:
                continue
            pu = pnl[u]
            if cu + 1 > best_cnt or (cu + 1 == best_cnt and pu >= best_pen):
                continue  # closing now already cannot beat the best; extending only adds arcs
            if u > w:
                L = w + m - u
                if L <= m - 1 and adm[u, L]:
                    tc, tp = cu + 1, pu + pen[u, L]
                    if tc < best_cnt or (tc == best_cnt and tp < best_pen):
                        best_cnt, best_pen = tc, tp
                        best_chain = _chain_vertices(par, w, u)
            span = m - u
            if span <= 1:
                continue
            Ls = np.nonzero(adm[u, 1:span])[0] + 1
            if Ls.size == 0:
                continue
            vs = u + Ls
            cand = pu + pen[u, Ls]
            better = (cu + 1 < cnt[vs]) | ((cu + 1 == cnt[vs]) & (cand < pnl[vs]))
            sel = vs[better]
            cnt[sel] = cu + 1
            pnl[sel] = cand[better]
            par[sel] = u
    if best_chain is None:
        raise RuntimeError("no admissible covering cycle")
    return best_cnt, best_pen, best_chain


def _exact_count_cycle(adm: np.ndarray, pen: np.ndarray, m: int, target: int) -> list[int] | None:
    """Minimum-penalty cycle with exactly `target` arcs, or None if infeasible."""
    anchors = {0}
    for i in range(1, m):
        for off in np.nonzero(adm[i, m - i:])[0].tolist():
            anchors.add(off)
    best_pen, best_chain = math.inf, None
    for w in sorted(anchors):
        g = np.full((target, m), np.inf)
        par = np.full((target, m), -1, dtype=np.int64)
        g[0, w] = 0.0
        for t in range(target):
            for u in range(w, m):
                gv = g[t, u]
                if not np.isfinite(gv):
                    continue
                if t == target - 1:
                    if u > w:
                        L = w + m - u
                        if L <= m - 1 and adm[u, L] and gv + pen[u, L] < best_pen:
                            chain = [u]
                            tt = t
                            while chain[-1] != w or tt > 0:
                                chain.append(int(par[tt, chain[-1]]))
                                tt -= 1
                            chain.reverse()
                            best_pen, best_chain = gv + pen[u, L], chain
                    continue
                span = m - u
                if span <= 1:
                    continue
                Ls = np.nonzero(adm[u, 1:span])[0] + 1
                if Ls.size == 0:
                    continue
                vs = u + Ls
                cand = gv + pen[u, Ls]
                upd = cand < g[t + 1, vs]
                g[t + 1, vs[upd]] = cand[upd]
                par[t + 1, vs[upd]] = u
    return best_chain


def _arc_admissible(P: np.ndarray, i: int, L: int, d_max: float) -> bool:
    m = len(P)
    a = P[i]
    b = P[(i + L) % m]
    seg = b - a
    len2 = float(seg @ seg)
    if len2 == 0.0:
        return False
    if L <= 1:
        return True
    ks = (np.arange(1, L) + i) % m
    rel = P[ks] - a
    t = np.clip((rel @ seg) / len2, 0.0, 1.0)
    d2 = ((rel - t[:, None] * seg) ** 2).sum(axis=1)
    return bool((np.sqrt(d2) <= d_max).all())


def _greedy_polygon(P: np.ndarray, d_max: float) -> list[int]:
    """Fallback for pathologically long borders: maximal admissible arcs from 0."""
    m = len(P)
    verts = [0]
    i = 0
    while True:
        remaining = m - i
        L = 1
        while L + 1 <= min(remaining, m - 1) and _arc_admissible(P, verts[-1] % m, L + 1, d_max):
            L += 1
        i += L
        if i >= m:
            break
        verts.append(i)
    while len(verts) < 4:  # split the longest arc until the floor is met
        spans = [(verts[(k + 1) % len(verts)] - verts[k]) % m or m for k in range(len(verts))]
        k = spans.index(max(spans))
        verts.insert(k + 1, (verts[k] + spans[k] // 2) % m)
        verts = sorted(set(verts))
    return verts


def approximate_polygon(path: DirectedPath, d_max: float = 1.0) -> Polygon:
    """Fit the fewest-vertex polygon through path points covering the whole border.

    Every skipped point must lie within d_max of the chord that spans it. Among
    minimal-vertex solutions the total mean-distance penalty is minimized, and
    a closed border around at least one pixel never yields fewer than 4
    vertices.
    """
    if d_max <= 0:
        raise ValueError("d_max must be positive")
    pts = list(path.points)
    if len(pts) >= 2 and pts[0] == pts[-1]:
        pts = pts[:-1]
    if len(pts) < 4:
        raise ValueError("degenerate path: need at least 4 distinct border points")
    m = len(pts)
    P = np.asarray(pts, dtype=np.float64)

    if m > _DP_POINT_LIMIT:
        chain = _greedy_polygon(P, d_max)
    else:
        adm, pen = _arc_tables(P, d_max)
        count, _, chain = _min_arc_cycle(adm, pen, m)
        if count < 4:
            for target in range(4, m + 1):
                exact = _exact_count_cycle(adm, pen, m, target)
                if exact is not None:
                    chain = exact
                    break

    lo = chain.index(min(chain))
    chain = chain[lo:] + chain[:lo]
    return Polygon(vertices=tuple(pts[k] for k in chain))


def smooth_polygon(polygon: Polygon, smoothness: float = 0.55) -> BezierOutline:
    """One cubic per vertex, anchored at edge midpoints, pulled toward the corner."""
    if not 0.0 <= smoothness <= 1.0:
        raise ValueError(f"smoothness {smoothness} out of [0, 1]")
    verts = polygon.vertices
    if len(verts) < 3:
        raise ValueError("polygon needs at least 3 vertices")
    k = len(verts)
    segments = []
    for i in range(k):
        ax, ay = verts[(i - 1) % k]
        bx, by = verts[i]
        cx, cy = verts[(i + 1) % k]
        p0 = ((ax + bx) / 2.0, (ay + by) / 2.0)
        p3 = ((bx + cx) / 2.0, (by + cy) / 2.0)
        p1 = (p0[0] + smoothness * (bx - p0[0]), p0[1] + smoothness * (by - p0[1]))
        p2 = (p3[0] + smoothness * (bx - p3[0]), p3[1] + smoothness * (by - p3[1]))
        segments.append((p0, p1, p2, p3))
    return BezierOutline(segments=tuple(segments))


def outline_to_svg(outlines: list[BezierOutline], width: int, height: int) -> str:
    """Path data with one closed subpath per outline, 3-decimal coordinates."""
    if not outlines:
        raise ValueError("no outlines to render")
    if width <= 0 or height <= 0:
        raise ValueError("viewport must be positive")
    parts = []
    for outline in outlines:
        first = outline.segments[0][0]
        cmds = [f"M {first[0]:.3f} {first[1]:.3f}"]
        for _, p1, p2, p3 in outline.segments:
            cmds.append(
                f"C {p1[0]:.3f} {p1[1]:.3f}, {p2[0]:.3f} {p2[1]:.3f}, {p3[0]:.3f} {p3[1]:.3f}")
        cmds.append("Z")
        parts.append(" ".join(cmds))
    return " ".join(parts)


def svg_document(outlines: list[BezierOutline], width: int, height: int) -> str:
    """Standalone SVG with a nonzero-filled single path element."""
    d = outline_to_svg(outlines, width, height)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}">'
        f'<path d="{d}" fill="currentColor" fill-rule="nonzero"/></svg>\n'
    )


@dataclass(frozen=True)
class Glyph:
    name: str
    codepoint: int
    svg_path: str
    advance: int


@dataclass
class GlyphManifest:
    family: str
    glyphs: list[Glyph]

    def to_json(self) -> str:
        doc = {
            "family": self.family,
            "glyphs": [
                {
                    "name": g.name,
                    "codepoint": f"U+{g.codepoint:04X}",
                    "svg": g.svg_path,
                    "advance": g.advance,
                }
                for g in self.glyphs
            ],
        }
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "GlyphManifest":
        doc = json.loads(text)
        glyphs = [
            Glyph(
                name=g["name"],
                codepoint=int(g["codepoint"].removeprefix("U+"), 16),
                svg_path=g["svg"],
                advance=int(g["advance"]),
            )
            for g in doc["glyphs"]
        ]
        return cls(family=doc["family"], glyphs=glyphs)


def build_glyph_set(icons, family: str) -> GlyphManifest:
    """Assign private-use codepoints from U+E000 in input order.

    `icons` yields (name, outlines, raster width, raster height); advance width
    is the raster width.
    """
    seen: set[str] = set()
    glyphs: list[Glyph] = []
    for index, (name, outlines, width, height) in enumerate(icons):
        if name in seen:
            raise ValueError(f"duplicate glyph name {name!r}")
        seen.add(name)
        glyphs.append(Glyph(
            name=name,
            codepoint=PUA_START + index,
            svg_path=outline_to_svg(outlines, width, height),
            advance=int(width),
        ))
    return GlyphManifest(family=family, glyphs=glyphs)
