"""Cluster the scattered leaves of a design artifact into icon candidates.

Design files store an icon as loose shape layers, not as one object. This demo
walks the composition stage on a small settings screen: pairwise correlations,
the agglomerative merge trace, the threshold cut, and the accept/reject policy
that separates icons from page furniture.

Run: python3 demos/01_compose_icons.py
"""
import json

from iconforge import (IconPolicy, Weights, cut_dendrogram, filter_icons, hac,
                       leaf_components, pair_correlation, parse_artifact)

# A screen the way a design tool would export it: the gear icon is three
# sibling shapes inside one group, the back arrow two, and the rest is a
# title, a divider, and a full-bleed background.
SCREEN = {
    "name": "settings",
    "width": 400,
    "height": 300,
    "root": {
        "name": "page", "kind": "group",
        "frame": {"x": 0, "y": 0, "w": 400, "h": 300},
        "children": [
        {"name": "background", "kind": "shape",
         "frame": {"x": 0, "y": 0, "w": 400, "h": 300}},
        {"name": "title", "kind": "text", "text": "Settings",
         "frame": {"x": 60, "y": 16, "w": 200, "h": 28}},
        {"name": "divider", "kind": "shape",
         "frame": {"x": 0, "y": 56, "w": 400, "h": 2}},
        {"name": "back", "kind": "group",
         "frame": {"x": 12, "y": 12, "w": 32, "h": 32},
         "children": [
             {"name": "chevron", "kind": "shape",
              "frame": {"x": 14, "y": 14, "w": 16, "h": 28}},
             {"name": "tail", "kind": "shape",
              "frame": {"x": 20, "y": 24, "w": 22, "h": 8}},
         ]},
        {"name": "gear", "kind": "group",
         "frame": {"x": 340, "y": 12, "w": 36, "h": 36},
         "children": [
             {"name": "ring", "kind": "shape",
              "frame": {"x": 344, "y": 16, "w": 28, "h": 28}},
             {"name": "teeth", "kind": "shape",
              "frame": {"x": 341, "y": 13, "w": 34, "h": 34}},
             {"name": "hub", "kind": "shape",
              "frame": {"x": 354, "y": 26, "w": 8, "h": 8}},
         ]},
        ],
    },
}

artifact = parse_artifact(json.dumps(SCREEN))
leaves = leaf_components(artifact)
print(f"{artifact.name}: {len(leaves)} leaf components")
for node in leaves:
    print(f"  id={node.id:2d} {node.kind:5s} {node.name}")

# The correlation blends three signals: same layer kind, same parent group,
# and bounding-box overlap. Siblings inside the gear group score high; the
# divider and a gear tooth share almost nothing.
w = Weights()
by_name = {node.name: node for node in leaves}
for a, b in [("ring", "teeth"), ("ring", "hub"), ("divider", "teeth"),
             ("chevron", "teeth")]:
    c = pair_correlation(by_name[a], by_name[b], w)
    print(f"corr({a}, {b}) = {c:.3f}")

# Average-linkage agglomeration, every merge annotated with its correlation.
dendro = hac(leaves, w)
names = [node.name for node in leaves]


def tag(i: int) -> str:
    return names[i] if i < len(names) else f"#{i}"


print("\nmerge trace (composite clusters get ids n, n+1, ...):")
for step, m in enumerate(dendro.merges):
    print(f"  step {step}: {tag(m.left)} + {tag(m.right)} at {m.correlation:.3f}")

clusters = cut_dendrogram(dendro, threshold=0.6)
print(f"\ncut at 0.6 -> {len(clusters)} clusters:")
ids = {node.id: node.name for node in leaves}
for members in sorted(clusters, key=min):
    print("  {" + ", ".join(ids[i] for i in sorted(members)) + "}")

# Policy pass: text clusters, page-sized boxes, and extreme aspect ratios are
# furniture, not icons. No member rasters here, so the coverage check is
# skipped (it needs pixels).
verdicts = filter_icons(clusters, artifact, IconPolicy())
print("\npolicy verdicts:")
for v in sorted(verdicts, key=lambda v: min(v.members)):
    names = ", ".join(ids[i] for i in sorted(v.members))
    if v.accepted:
        print(f"  icon    {{{names}}}  bbox {v.bbox.w:.0f}x{v.bbox.h:.0f}")
    else:
        print(f"  reject  {{{names}}}  ({v.reason})")
