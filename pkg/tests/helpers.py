"""Independent reference implementations and fixtures shared by the tests.

Everything here is deliberately written the straightforward way (scalar loops,
rebuild-from-scratch) so it can serve as an oracle for the optimized library
code paths.
"""

from __future__ import annotations

import json
import math

import numpy as np

from iconforge import parse_artifact
from iconforge.composer import Merge, cluster_correlation, correlation_matrix


# ---------------------------------------------------------------------------
# artifact fixture builders

def leaf(name, kind, x, y, w, h, text=None, image=None):
    node = {"name": name, "kind": kind, "frame": {"x": x, "y": y, "w": w, "h": h}}
    if text is not None:
        node["text"] = text
    if image is not None:
        node["image"] = image
    return node


def group(name, x, y, w, h, children):
    return {"name": name, "kind": "group", "frame": {"x": x, "y": y, "w": w, "h": h},
            "children": children}


def build_artifact(children, name="fixture", width=400, height=300):
    doc = {"name": name, "width": width, "height": height,
           "root": group("root", 0, 0, width, height, children)}
    return parse_artifact(json.dumps(doc))


def random_artifact(rng: np.random.Generator, n_leaves: int):
    """A tree with random grouping, kinds, and integer frames; n_leaves leaf nodes."""
    n_groups = int(rng.integers(0, 4))
    buckets: list[list[dict]] = [[] for _ in range(n_groups + 1)]  # bucket 0 = root
    kinds = ("bitmap", "shape", "text")
    for i in range(n_leaves):
        kind = kinds[int(rng.integers(0, 3))]
        x, y = int(rng.integers(0, 150)), int(rng.integers(0, 150))
        w, h = int(rng.integers(1, 61)), int(rng.integers(1, 61))
        node = leaf(f"leaf-{i}", kind, x, y, w, h,
                    text="t" if kind == "text" else None)
        buckets[int(rng.integers(0, n_groups + 1))].append(node)
    children = list(buckets[0])
    for gi in range(n_groups):
        if buckets[gi + 1]:
            children.append(group(f"group-{gi}", 0, 0, 200, 200, buckets[gi + 1]))
    if not children:
        children.append(leaf("leaf-x", "shape", 0, 0, 10, 10))
    return build_artifact(children, name="random", width=220, height=220)


# ---------------------------------------------------------------------------
# HAC brute-force reference: rebuild every cluster pair correlation each round

def brute_hac(components, weights):
    """Greedy max-correlation agglomeration, recomputed from scratch per round."""
    n = len(components)
    ids = [c.id for c in components]
    base = correlation_matrix(components, weights)
    clusters: dict[int, list[int]] = {p: [p] for p in range(n)}  # node -> positions
    merges: list[Merge] = []
    for step in range(n - 1):
        nodes = sorted(clusters)
        pick = None
        for ai, a in enumerate(nodes):
            for b in nodes[ai + 1:]:
                # the production table fills a pair's entry when its younger
                # cluster forms, younger members as rows; matching that keeps
                # the numpy summation order, and so the float, bit-identical
                corr = cluster_correlation(base, clusters[b], clusters[a])
                mins = sorted((min(ids[p] for p in clusters[a]),
                               min(ids[p] for p in clusters[b])))
                entry = (corr, a, b, tuple(mins))
                if pick is None or corr > pick[0] or (corr == pick[0] and entry[3] < pick[3]):
                    pick = (corr, a, b, tuple(mins))
        corr, a, b, _ = pick
        amin = min(ids[p] for p in clusters[a])
        bmin = min(ids[p] for p in clusters[b])
        left, right = (a, b) if amin <= bmin else (b, a)
        merges.append(Merge(left=left, right=right, correlation=float(corr)))
        merged = sorted(clusters.pop(a) + clusters.pop(b), key=lambda p: ids[p])
        clusters[n + step] = merged
    return merges


# ---------------------------------------------------------------------------
# polygon brute-force reference

def seg_distance(p, a, b) -> float:
    """Clamped point-to-segment distance via the expanded quadratic form.

    Matches the expression order of the tracer's arc tables term for term, so
    arcs whose true max distance lands exactly on d_max resolve the same way
    on both sides; a direct residual-vector distance can disagree by one ulp
    there and flip admissibility.
    """
    rx, ry = p[0] - a[0], p[1] - a[1]
    cx, cy = b[0] - a[0], b[1] - a[1]
    len2 = cx * cx + cy * cy
    if len2 == 0.0:
        return math.hypot(rx, ry)
    dot = rx * cx + ry * cy
    t = max(0.0, min(1.0, dot / len2))
    d2 = (rx * rx + ry * ry) - 2.0 * t * dot + (t * t) * len2
    return math.sqrt(max(d2, 0.0))


def arc_interior(m: int, i: int, j: int):
    k = (i + 1) % m
    while k != j:
        yield k
        k = (k + 1) % m


def arc_ok(P, i, j, d_max) -> bool:
    if i == j or tuple(P[i]) == tuple(P[j]):
        return False
    return all(seg_distance(P[k], P[i], P[j]) <= d_max for k in arc_interior(len(P), i, j))


def arc_pen(P, i, j) -> float:
    dists = [seg_distance(P[k], P[i], P[j]) for k in arc_interior(len(P), i, j)]
    return sum(dists) / len(dists) if dists else 0.0


def brute_min_polygon(P, d_max, floor=4):
    """Exhaustive (count, total penalty) optimum over admissible covering cycles.

    When the unconstrained optimum uses fewer than `floor` arcs, returns the
    minimum-penalty cycle at the smallest feasible count >= floor instead.
    """
    m = len(P)
    ok = [[arc_ok(P, i, j, d_max) for j in range(m)] for i in range(m)]
    pen = [[arc_pen(P, i, j) if ok[i][j] else math.inf for j in range(m)] for i in range(m)]

    best = (math.inf, math.inf)
    for start in range(m):
        dp = [(math.inf, math.inf)] * (m + 1)
        dp[0] = (0, 0.0)
        for q2 in range(1, m + 1):
            j = (start + q2) % m
            acc = dp[q2]
            for q1 in range(q2):
                if math.isinf(dp[q1][0]):
                    continue
                i = (start + q1) % m
                if not ok[i][j]:
                    continue
                cand = (dp[q1][0] + 1, dp[q1][1] + pen[i][j])
                if cand < acc:
                    acc = cand
            dp[q2] = acc
        if dp[m] < best:
            best = dp[m]
    if math.isinf(best[0]) or best[0] >= floor:
        return best

    for target in range(floor, m + 1):
        best_pen = math.inf
        for start in range(m):
            f = [[math.inf] * (m + 1) for _ in range(target + 1)]
            f[0][0] = 0.0
            for c in range(1, target + 1):
                for q2 in range(1, m + 1):
                    j = (start + q2) % m
                    for q1 in range(q2):
                        if math.isinf(f[c - 1][q1]):
                            continue
                        i = (start + q1) % m
                        if ok[i][j] and f[c - 1][q1] + pen[i][j] < f[c][q2]:
                            f[c][q2] = f[c - 1][q1] + pen[i][j]
            best_pen = min(best_pen, f[target][m])
        if not math.isinf(best_pen):
            return (target, best_pen)
    return (math.inf, math.inf)


def polygon_cost(P, chain, d_max):
    """(count, total penalty) of a vertex-index cycle; asserts admissibility."""
    m = len(chain)
    total = 0.0
    for a, b in zip(chain, chain[1:] + chain[:1]):
        assert arc_ok(P, a, b, d_max), f"inadmissible arc {a}->{b}"
        total += arc_pen(P, a, b)
    return m, total


# ---------------------------------------------------------------------------
# border-path validation (black on left against the original bitmap)

_LEFT_OF = {(1, 0): (0, -1), (-1, 0): (-1, 0), (0, 1): (0, 0), (0, -1): (-1, -1)}
_RIGHT_OF = {(1, 0): (0, 0), (-1, 0): (-1, -1), (0, 1): (-1, 0), (0, -1): (0, -1)}


def check_path(points, bits) -> None:
    """Assert closure, unit steps, and black-left/white-right per step."""
    h, w = bits.shape

    def black(px, py):
        return 0 <= px < w and 0 <= py < h and bool(bits[py, px])

    assert points[0] == points[-1], "path is not closed"
    assert len(points) >= 5, "closed lattice path needs at least 4 edges"
    for (x0, y0), (x1, y1) in zip(points, points[1:]):
        d = (x1 - x0, y1 - y0)
        assert d in _LEFT_OF, f"non-unit step {d}"
        lo, ro = _LEFT_OF[d], _RIGHT_OF[d]
        assert black(x0 + lo[0], y0 + lo[1]), f"white pixel on the left at {(x0, y0)}->{d}"
        assert not black(x0 + ro[0], y0 + ro[1]), f"black pixel on the right at {(x0, y0)}->{d}"


# ---------------------------------------------------------------------------
# bitmap fixtures

def disk_bitmap(size=20, radius=8.0):
    yy, xx = np.mgrid[0:size, 0:size]
    c = (size - 1) / 2.0
    return (yy - c) ** 2 + (xx - c) ** 2 <= radius ** 2


def ring_bitmap(size=20, r_out=8.0, r_in=4.0):
    yy, xx = np.mgrid[0:size, 0:size]
    c = (size - 1) / 2.0
    d2 = (yy - c) ** 2 + (xx - c) ** 2
    return (d2 <= r_out ** 2) & (d2 > r_in ** 2)


def square_bitmap(size=20, margin=2):
    bits = np.zeros((size, size), dtype=bool)
    bits[margin:size - margin, margin:size - margin] = True
    return bits


def l_bitmap():
    bits = np.zeros((13, 13), dtype=bool)
    bits[1:11, 1:4] = True
    bits[8:11, 1:10] = True
    return bits


def checkerboard2():
    bits = np.zeros((2, 2), dtype=bool)
    bits[0, 0] = bits[1, 1] = True
    return bits


def blob_bitmap(rng: np.random.Generator, size=24):
    """Union of a few random disks; non-empty by construction."""
    bits = np.zeros((size, size), dtype=bool)
    yy, xx = np.mgrid[0:size, 0:size]
    for _ in range(int(rng.integers(3, 7))):
        cx = float(rng.uniform(6, size - 6))
        cy = float(rng.uniform(6, size - 6))
        r = float(rng.uniform(2.5, 6.0))
        bits |= (yy - cy) ** 2 + (xx - cx) ** 2 <= r ** 2
    return bits


# ---------------------------------------------------------------------------
# bezier rasterization oracle (nonzero winding at pixel centers)

def flatten_outline(outline, steps=64):
    polys = []
    for (p0, p1, p2, p3) in outline.segments:
        t = np.linspace(0.0, 1.0, steps, endpoint=False)
        P = np.array([p0, p1, p2, p3], dtype=float)
        B = (((1 - t) ** 3)[:, None] * P[0] + (3 * t * (1 - t) ** 2)[:, None] * P[1]
             + (3 * t ** 2 * (1 - t))[:, None] * P[2] + (t ** 3)[:, None] * P[3])
        polys.append(B)
    return np.vstack(polys)


def rasterize_outlines(outlines, width, height, steps=64):
    cx, cy = np.meshgrid(np.arange(width) + 0.5, np.arange(height) + 0.5)
    winding = np.zeros((height, width), dtype=np.int64)
    for outline in outlines:
        poly = flatten_outline(outline, steps)
        nxt = np.roll(poly, -1, axis=0)
        for (x1, y1), (x2, y2) in zip(poly, nxt):
            if y1 == y2:
                continue
            up = y2 > y1
            ymin, ymax = (y1, y2) if up else (y2, y1)
            rows = (cy >= ymin) & (cy < ymax)
            xi = x1 + (cy - y1) * (x2 - x1) / (y2 - y1)
            winding += np.where(rows & (cx < xi), 1 if up else -1, 0)
    return winding != 0


def pixel_iou(a: np.ndarray, b: np.ndarray) -> float:
    union = int((a | b).sum())
    return int((a & b).sum()) / union if union else 1.0


# ---------------------------------------------------------------------------
# BLEU brute-force reference

def naive_bleu(cand_tokens, ref_tokens, n_max=4) -> float:
    logs = []
    for n in range(1, n_max + 1):
        cg: dict[tuple, int] = {}
        for i in range(len(cand_tokens) - n + 1):
            g = tuple(cand_tokens[i:i + n])
            cg[g] = cg.get(g, 0) + 1
        rg: dict[tuple, int] = {}
        for i in range(len(ref_tokens) - n + 1):
            g = tuple(ref_tokens[i:i + n])
            rg[g] = rg.get(g, 0) + 1
        total = sum(cg.values())
        if total == 0 and not rg:
            continue
        clipped = sum(min(v, rg.get(g, 0)) for g, v in cg.items())
        if clipped == 0:
            return 0.0
        logs.append(math.log(clipped / total) / n_max)
    c, r = len(cand_tokens), len(ref_tokens)
    bp = 1.0 if c > r else math.exp(1.0 - r / c)
    return bp * math.exp(sum(logs))


# ---------------------------------------------------------------------------
# association-rule brute-force reference

def brute_rules(corpus, t_sup, t_conf):
    n = len(corpus)
    sets = [set(item.labels) for item in corpus]
    labels = sorted(set().union(*sets))
    out = []
    for i, x in enumerate(labels):
        for y in labels[i + 1:]:
            co = sum(1 for s in sets if x in s and y in s)
            support = co / n
            if support < t_sup:
                continue
            for t1, t2 in ((x, y), (y, x)):
                cnt = sum(1 for s in sets if t1 in s)
                confidence = support / (cnt / n)
                if confidence >= t_conf:
                    out.append((t1, t2, support, confidence))
    return out
