"""Icon composition: correlation-driven agglomerative clustering over components.

Pairwise correlation blends three signals: whether two components share a kind,
whether they share an immediate parent group, and how much their frames overlap.
Average-linkage merging runs until one cluster remains; cutting the dendrogram
at a threshold yields candidate icons, which then pass through a size/aspect/
coverage policy filter. Mean-shift and DBSCAN over frame centers are included
as baselines for the evaluation harness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .artifact import DesignArtifact, Node, Rect
from . import tracer


def iou(a: Rect, b: Rect) -> float:
    """Intersection-over-union of two rectangles; 0.0 when the union is empty."""
    ix = min(a.x + a.w, b.x + b.w) - max(a.x, b.x)
    iy = min(a.y + a.h, b.y + b.h) - max(a.y, b.y)
    inter = max(ix, 0.0) * max(iy, 0.0)
    union = a.w * a.h + b.w * b.h - inter
    if union <= 0.0:
        return 0.0
    return inter / union


class Weights:
    """Blend weights for the kind/hierarchy/overlap signals, normalized to sum to 1."""

    __slots__ = ("alpha", "beta", "gamma")

    def __init__(self, alpha: float = 1.0, beta: float = 1.0, gamma: float = 1.0):
        for v in (alpha, beta, gamma):
            if not math.isfinite(v) or v < 0:
                raise ValueError("weights must be finite and non-negative")
        total = alpha + beta + gamma
        if total <= 0:
            raise ValueError("at least one weight must be positive")
        self.alpha = alpha / total
        self.beta = beta / total
        self.gamma = gamma / total

    def __repr__(self):
        return f"Weights({self.alpha}, {self.beta}, {self.gamma})"


def pair_correlation(a: Node, b: Node, weights: Weights) -> float:
    """Correlation of two leaf components from one artifact, in [0, 1]."""
    same_kind = 1.0 if a.kind == b.kind else 0.0
    same_parent = 1.0 if a.parent_id == b.parent_id else 0.0
    return weights.alpha * same_kind + weights.beta * same_parent + weights.gamma * iou(a.frame, b.frame)


def correlation_matrix(components: list[Node], weights: Weights) -> np.ndarray:
    """Pairwise correlations as an (n, n) float matrix, bit-identical to pair_correlation."""
    n = len(components)
    kinds = np.array([KIND_CODES[c.kind] for c in components])
    parents = np.array([-1 if c.parent_id is None else c.parent_id for c in components])
    x0 = np.array([c.frame.x for c in components])
    y0 = np.array([c.frame.y for c in components])
    w = np.array([c.frame.w for c in components])
    h = np.array([c.frame.h for c in components])

    ix = np.minimum(x0[:, None] + w[:, None], x0[None, :] + w[None, :]) - np.maximum(x0[:, None], x0[None, :])
    iy = np.minimum(y0[:, None] + h[:, None], y0[None, :] + h[None, :]) - np.maximum(y0[:, None], y0[None, :])
    inter = np.maximum(ix, 0.0) * np.maximum(iy, 0.0)
    union = (w * h)[:, None] + (w * h)[None, :] - inter
    with np.errstate(divide="ignore", invalid="ignore"):
        overlap = np.where(union > 0.0, inter / union, 0.0)

    same_kind = (kinds[:, None] == kinds[None, :]).astype(np.float64)
    same_parent = (parents[:, None] == parents[None, :]).astype(np.float64)
    return weights.alpha * same_kind + weights.beta * same_parent + weights.gamma * overlap


KIND_CODES = {"group": 0, "bitmap": 1, "shape": 2, "text": 3}


@dataclass(frozen=True)
class Merge:
    """One agglomeration step; left/right index leaves (0..n-1) or earlier merges (n+t)."""

    left: int
    right: int
    correlation: float


@dataclass
class Dendrogram:
    leaves: list[int]          # component ids in input order
    merges: list[Merge]


def cluster_correlation(base: np.ndarray, a: list[int], b: list[int]) -> float:
    """Average linkage: mean base correlation over all cross pairs of two clusters."""
    return float(base[np.ix_(a, b)].sum()) / (len(a) * len(b))


def hac(components: list[Node], weights: Weights | None = None) -> Dendrogram:
    """Greedy agglomerative clustering by highest average pair correlation.

    Ties pick the pair whose clusters have the smallest minimum component id,
    then the smallest second minimum. Cluster members are kept sorted by
    component id so results do not depend on input order.
    """
    if not components:
        raise ValueError("need at least one component")
    if weights is None:
        weights = Weights()
    n = len(components)
    leaves = [c.id for c in components]
    dendro = Dendrogram(leaves=leaves, merges=[])
    if n == 1:
        return dendro

    base = correlation_matrix(components, weights)
    members: dict[int, list[int]] = {p: [p] for p in range(n)}
    min_id: dict[int, int] = {p: leaves[p] for p in range(n)}

    # Correlation entries between live clusters; node indices never get reused,
    # so a (2n-1)^2 table indexed by node id keeps lookups trivial.
    table = np.full((2 * n - 1, 2 * n - 1), -np.inf)
    active = list(range(n))
    for i in range(n):
        for j in range(i + 1, n):
            table[i, j] = table[j, i] = base[i, j]

    for step in range(n - 1):
        sub = table[np.ix_(active, active)]
        best = sub.max()
        ti, tj = np.nonzero(np.triu(sub == best, 1))
        pick = None
        for a_pos, b_pos in zip(ti.tolist(), tj.tolist()):
            na, nb = active[a_pos], active[b_pos]
            key = (min(min_id[na], min_id[nb]), max(min_id[na], min_id[nb]))
            if pick is None or key < pick[0]:
                pick = (key, na, nb)
        _, na, nb = pick

        new = n + step
        left, right = (na, nb) if min_id[na] <= min_id[nb] else (nb, na)
        dendro.merges.append(Merge(left=left, right=right, correlation=float(best)))

        merged = sorted(members[na] + members[nb], key=lambda p: leaves[p])
        members[new] = merged
        min_id[new] = min(min_id[na], min_id[nb])
        active = [x for x in active if x not in (na, nb)]
        for x in active:
            val = cluster_correlation(base, merged, members[x])
            table[new, x] = table[x, new] = val
        active.append(new)

    return dendro


def cut_dendrogram(dendrogram: Dendrogram, threshold: float) -> list[set[int]]:
    """Keep merges with correlation >= threshold; maximal kept subtrees become clusters."""
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold {threshold} out of [0, 1]")
    n = len(dendrogram.leaves)
    total = n + len(dendrogram.merges)
    parent = list(range(total))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    kept = [m.correlation >= threshold for m in dendrogram.merges]
    alive = [True] * n + kept
    for t, merge in enumerate(dendrogram.merges):
        if not kept[t]:
            continue
        node = n + t
        for child in (merge.left, merge.right):
            if alive[child]:
                ra, rb = find(node), find(child)
                if ra != rb:
                    parent[rb] = ra

    groups: dict[int, set[int]] = {}
    for pos in range(n):
        groups.setdefault(find(pos), set()).add(dendrogram.leaves[pos])
    return sorted(groups.values(), key=lambda s: min(s))


@dataclass(frozen=True)
class IconPolicy:
    """Accept/reject rules separating icon-sized clusters from page furniture."""

    max_area_ratio: float = 0.04
    min_aspect: float = 1.0 / 3.0
    max_aspect: float = 3.0
    max_coverage: float = 0.95


@dataclass
class IconCluster:
    members: frozenset[int]
    bbox: Rect
    accepted: bool
    reason: str | None = None


def _cluster_bbox(member_ids, artifact: DesignArtifact) -> Rect:
    nodes = {node.id: node for node in artifact.nodes()}
    frames = [nodes[m].frame for m in sorted(member_ids)]
    box = frames[0]
    for fr in frames[1:]:
        box = box.union(fr)
    return box


def filter_icons(clusters: list[set[int]], artifact: DesignArtifact,
                 policy: IconPolicy | None = None, assets=None) -> list[IconCluster]:
    """Tag each cluster accepted or rejected with a reason.

    Rejections, in check order: any text member; bbox too large relative to the
    canvas; bbox aspect outside the allowed band; and, when member rasters are
    available through `assets`, near-total opaque coverage (backgrounds).
    """
    if policy is None:
        policy = IconPolicy()
    nodes = {node.id: node for node in artifact.nodes()}
    canvas_area = float(artifact.width * artifact.height)
    out = []
    for member_set in clusters:
        members = frozenset(member_set)
        bbox = _cluster_bbox(members, artifact)
        cluster = IconCluster(members=members, bbox=bbox, accepted=True)

        if any(nodes[m].kind == "text" for m in members):
            cluster.accepted, cluster.reason = False, "contains a text component"
        elif bbox.area / canvas_area > policy.max_area_ratio:
            ratio = bbox.area / canvas_area
            cluster.accepted, cluster.reason = False, f"bbox covers {ratio:.4f} of the canvas"
        elif bbox.w <= 0 or bbox.h <= 0 or not (policy.min_aspect <= bbox.w / bbox.h <= policy.max_aspect):
            cluster.accepted, cluster.reason = False, "bbox aspect ratio outside allowed band"
        elif assets is not None:
            try:
                raster = tracer.compose_raster(cluster, artifact, assets)
            except (OSError, ValueError):
                raster = None  # rasters not loadable: coverage check does not apply
            if raster is not None:
                coverage = float((raster.pixels[:, :, 3] >= 128).mean())
                if coverage > policy.max_coverage:
                    cluster.accepted = False
                    cluster.reason = f"opaque coverage {coverage:.4f} exceeds limit"
        out.append(cluster)
    return out


def mean_shift(components: list[Node], bandwidth: float) -> list[set[int]]:
    """Flat-kernel mean-shift over frame centers; modes merge within bandwidth/2."""
    if bandwidth <= 0:
        raise ValueError("bandwidth must be positive")
    if not components:
        return []
    pts = np.array([c.frame.center for c in components], dtype=np.float64)
    modes = np.empty_like(pts)
    for i in range(len(pts)):
        x = pts[i].copy()
        for _ in range(100):
            near = pts[np.linalg.norm(pts - x, axis=1) <= bandwidth]
            shifted = near.mean(axis=0)
            if np.linalg.norm(shifted - x) < 1e-3:
                x = shifted
                break
            x = shifted
        modes[i] = x

    canonical: list[np.ndarray] = []
    assign: list[int] = []
    for i in range(len(pts)):
        for j, center in enumerate(canonical):
            if np.linalg.norm(modes[i] - center) <= bandwidth / 2.0:
                assign.append(j)
                break
        else:
            canonical.append(modes[i])
            assign.append(len(canonical) - 1)

    clusters: dict[int, set[int]] = {}
    for i, c in enumerate(components):
        clusters.setdefault(assign[i], set()).add(c.id)
    return sorted(clusters.values(), key=lambda s: min(s))


def dbscan(components: list[Node], eps: float, min_pts: int) -> tuple[list[set[int]], set[int]]:
    """Euclidean DBSCAN over frame centers; returns (clusters, noise ids)."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    if min_pts < 1:
        raise ValueError("min_pts must be at least 1")
    if not components:
        return [], set()
    pts = np.array([c.frame.center for c in components], dtype=np.float64)
    n = len(pts)
    dist = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2)
    neighbors = [np.nonzero(dist[i] <= eps)[0].tolist() for i in range(n)]
    core = [len(neighbors[i]) >= min_pts for i in range(n)]

    label = [-1] * n
    cluster_id = 0
    for i in range(n):
        if label[i] != -1 or not core[i]:
            continue
        label[i] = cluster_id
        queue = list(neighbors[i])
        while queue:
            j = queue.pop(0)
            if label[j] != -1:
                continue
            label[j] = cluster_id
            if core[j]:
                queue.extend(neighbors[j])
        cluster_id += 1

    clusters: dict[int, set[int]] = {}
    noise: set[int] = set()
    for i, c in enumerate(components):
        if label[i] == -1:
            noise.add(c.id)
        else:
            clusters.setdefault(label[i], set()).add(c.id)
    return sorted(clusters.values(), key=lambda s: min(s)), noise
