"""Mine a label vocabulary from a corpus of tagged icons.

Real corpora tag the same glyph inconsistently: "trash" here, "delete" there,
"trash2" for a near-identical redraw. Association rules expose which labels
co-occur; near-duplicate grouping (visual or lexical) folds spelling variants;
the connected components of the combined graph become synonym families.

Run: python3 demos/04_mine_vocabulary.py
"""
import numpy as np

from iconforge import (LabeledIcon, LabelGraph, Raster, group_labels,
                       label_graph_components, lexical_similarity, mine_rules,
                       visual_similarity)


def glyph(seed: int) -> Raster:
    rng = np.random.default_rng(seed)
    px = np.zeros((12, 12, 4), dtype=np.uint8)
    ink = rng.random((12, 12)) < 0.35
    px[ink] = (20, 20, 20, 255)
    return Raster(px)


trash = glyph(1)
gear = glyph(2)

# 20 icons; "trash" and "delete" always travel together, "gear" sometimes
# brings "settings", and a handful of one-off tags add noise.
corpus = [LabeledIcon("t0.png", ("trash", "delete"), trash)]
corpus += [LabeledIcon(f"t{i}.png", ("trash", "delete"), glyph(10 + i))
           for i in range(1, 5)]
corpus += [LabeledIcon("t5.png", ("trash2", "bin"), trash)]  # same pixels as t0
corpus += [LabeledIcon(f"g{i}.png", ("gear", "settings"), glyph(20 + i))
           for i in range(4)]
corpus += [LabeledIcon(f"g{i}.png", ("gear",), glyph(30 + i)) for i in range(4, 8)]
corpus += [LabeledIcon(f"x{i}.png", (tag,), glyph(40 + i))
           for i, tag in enumerate(("wifi", "cloud", "pencil",
                                    "anchor", "rocket", "camera"))]
print(f"corpus: {len(corpus)} icons")

rules, graph = mine_rules(corpus, t_sup=0.05, t_conf=0.3)
print(f"\n{len(rules)} association rules (support >= 0.05, confidence >= 0.3):")
print(f"  {'rule':22s} {'support':>7s} {'conf':>5s}")
for r in rules:
    print(f"  {r.antecedent + ' -> ' + r.consequent:22s} "
          f"{r.support:7.2f} {r.confidence:5.2f}")

# "gear -> settings" holds only half the time, so the reverse rule is the
# confident one; both directions survive for trash/delete.

print("\nnear-duplicate signals:")
print(f"  visual  trash vs t5 redraw : {visual_similarity(trash, trash):.2f}")
print(f"  visual  trash vs gear      : {visual_similarity(trash, gear):.2f}")
print(f"  lexical trash vs trash2    : {lexical_similarity('trash', 'trash2'):.2f}")
print(f"  lexical trash vs settings  : {lexical_similarity('trash', 'settings'):.2f}")

# Labels that co-occur on an icon share a representative raster, so rule
# partners group here too, alongside the trash/trash2 spelling variant.
pairs = group_labels(corpus, sim_threshold=0.8)
print(f"\nduplicate label pairs: {pairs}")
combined = LabelGraph(
    nodes=tuple(sorted(set(graph.nodes) | {x for p in pairs for x in p})),
    edges=tuple(sorted(set(graph.edges) | set(pairs))),
)

families = label_graph_components(combined)
print("synonym families (largest first):")
for family in families:
    print("  " + " / ".join(family))
