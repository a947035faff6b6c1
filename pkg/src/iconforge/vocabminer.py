"""Label vocabulary mining over a labeled icon corpus.

Association rules surface label pairs that co-occur across icons: a pair is
frequent when its joint support clears a floor, and a directed rule t1 => t2
is emitted when the pair's support divided by t1's support clears a confidence
floor. Rules induce an undirected label graph whose connected components form
the vocabulary groups. Near-duplicate labels can also be grouped directly by
visual similarity of representative icons or by edit distance.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .raster import Raster, resize_nearest

SIM_SIZE = 64


@dataclass(frozen=True)
class LabeledIcon:
    icon: str
    labels: tuple[str, ...]
    raster: Raster | None = None


def _gray_over_white(raster: Raster) -> np.ndarray:
    """Composite over white, then channel-average grayscale as float."""
    px = raster.pixels.astype(np.float64)
    alpha = px[:, :, 3:4] / 255.0
    rgb = px[:, :, :3] * alpha + 255.0 * (1.0 - alpha)
    return rgb.mean(axis=2)


def visual_similarity(a: Raster, b: Raster) -> float:
    """1 - normalized mean squared error between white-composited grayscales.

    Both images are nearest-neighbor resampled to 64x64 first, so rasters of
    different sizes compare directly. Identical rasters score 1.0.
    """
    ga = _gray_over_white(resize_nearest(a, SIM_SIZE, SIM_SIZE))
    gb = _gray_over_white(resize_nearest(b, SIM_SIZE, SIM_SIZE))
    mse = float(((ga - gb) ** 2).mean())
    return 1.0 - mse / (255.0 * 255.0)


def levenshtein(a: str, b: str) -> int:
    """Edit distance with unit insert/delete/substitute costs."""
    if not a:
        return len(b)
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def lexical_similarity(a: str, b: str) -> float:
    """1 - levenshtein / max length; two empty strings count as identical."""
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein(a, b) / longest


def group_labels(corpus: list[LabeledIcon], sim_threshold: float = 0.9) -> list[tuple[str, str]]:
    """Label pairs that are near-duplicates visually or lexically.

    Each label is represented by the first corpus icon carrying it; a pair
    groups when either representative-raster similarity or edit-distance
    similarity reaches the threshold. Pairs come back sorted.
    """
    rep: dict[str, Raster | None] = {}
    for item in corpus:
        for label in item.labels:
            if label not in rep:
                rep[label] = item.raster
    labels = sorted(rep)
    pairs = []
    for i, x in enumerate(labels):
        for y in labels[i + 1:]:
            if lexical_similarity(x, y) >= sim_threshold:
                pairs.append((x, y))
                continue
            rx, ry = rep[x], rep[y]
            if rx is not None and ry is not None and visual_similarity(rx, ry) >= sim_threshold:
                pairs.append((x, y))
    return pairs


@dataclass(frozen=True)
class AssociationRule:
    antecedent: str
    consequent: str
    support: float
    confidence: float


@dataclass
class LabelGraph:
    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]


def mine_rules(corpus: list[LabeledIcon], t_sup: float = 0.001,
               t_conf: float = 0.2) -> tuple[list[AssociationRule], LabelGraph]:
    """Emit directed co-occurrence rules and the undirected graph they induce."""
    if not corpus:
        raise ValueError("corpus is empty")
    if not 0.0 <= t_sup <= 1.0 or not 0.0 <= t_conf <= 1.0:
        raise ValueError("thresholds must lie in [0, 1]")
    n = len(corpus)
    label_count: dict[str, int] = {}
    pair_count: dict[tuple[str, str], int] = {}
    for item in corpus:
        labels = sorted(set(item.labels))
        for lab in labels:
            label_count[lab] = label_count.get(lab, 0) + 1
        for i, x in enumerate(labels):
            for y in labels[i + 1:]:
                pair_count[(x, y)] = pair_count.get((x, y), 0) + 1

    rules: list[AssociationRule] = []
    edges: set[tuple[str, str]] = set()
    for (x, y) in sorted(pair_count):
        support = pair_count[(x, y)] / n
        if support < t_sup:
            continue
        for t1, t2 in ((x, y), (y, x)):
            confidence = support / (label_count[t1] / n)
            if confidence >= t_conf:
                rules.append(AssociationRule(t1, t2, support, confidence))
                edges.add((x, y))
    endpoints = {t for edge in edges for t in edge}
    graph = LabelGraph(nodes=tuple(sorted(endpoints)), edges=tuple(sorted(edges)))
    return rules, graph


def label_graph_components(graph: LabelGraph) -> list[list[str]]:
    """Connected components, largest first, then lexicographic by members."""
    adjacency: dict[str, set[str]] = {node: set() for node in graph.nodes}
    for x, y in graph.edges:
        adjacency.setdefault(x, set()).add(y)
        adjacency.setdefault(y, set()).add(x)
    seen: set[str] = set()
    components: list[list[str]] = []
    for node in sorted(adjacency):
        if node in seen:
            continue
        stack, comp = [node], []
        seen.add(node)
        while stack:
            cur = stack.pop()
            comp.append(cur)
            for nxt in adjacency[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        components.append(sorted(comp))
    return sorted(components, key=lambda c: (-len(c), c))


def parse_corpus(text: str) -> list[LabeledIcon]:
    """Read a corpus of JSON lines: {"icon": path, "labels": [...]}."""
    corpus = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            doc = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ValueError(f"corpus line {lineno}: malformed JSON: {exc}") from exc
        if not isinstance(doc, dict) or "icon" not in doc or "labels" not in doc:
            raise ValueError(f"corpus line {lineno}: expected icon and labels fields")
        labels = doc["labels"]
        if not isinstance(labels, list):
            raise ValueError(f"corpus line {lineno}: labels must be a list")
        corpus.append(LabeledIcon(icon=str(doc["icon"]), labels=tuple(str(x) for x in labels)))
    if not corpus:
        raise ValueError("corpus is empty")
    return corpus
