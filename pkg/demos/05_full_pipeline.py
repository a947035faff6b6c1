"""Screen to stylesheet, end to end, entirely in memory.

One run of everything the package does: parse an artifact whose icons arrive
as scattered bitmap fragments, cluster the fragments, composite and vectorize
each accepted icon, detect its color, predict its label, and emit the SVG,
CSS, and gallery files a front-end would consume. Ends by scoring the
clustering against ground truth and the generated markup against a reference.

The CLI wraps the same flow: `iconforge compose`, `trace`, `color`, `classify`,
`generate`, `eval`.

Run: python3 demos/05_full_pipeline.py
"""
import json
import tempfile
from pathlib import Path

import numpy as np

from iconforge import (CompositionTruth, MemoryAssets, Raster, approximate_polygon,
                       bleu, binarize, build_glyph_set, classify, compose_raster,
                       composition_metrics, cut_dendrogram, filter_icons, hac,
                       leaf_components, parse_artifact, primary_color, render_css,
                       render_gallery, render_snippet, smooth_polygon,
                       svg_document, trace_paths, train_centroids)

SIZE = 24


def shape_raster(kind: str, rgba: tuple[int, int, int, int],
                 dx: float = 0.0, dy: float = 0.0) -> Raster:
    """A 24x24 glyph drawing: 'play' triangle or 'record' disk, shiftable."""
    yy, xx = np.ogrid[:SIZE, :SIZE]
    if kind == "play":
        mask = (xx >= 5 + dx) & (xx <= 20 + dx) & \
               (np.abs(yy - 11.5 - dy) <= (20 + dx - xx) * 0.55)
    else:
        mask = (xx - 11.5 - dx) ** 2 + (yy - 11.5 - dy) ** 2 <= 64
    px = np.zeros((SIZE, SIZE, 4), dtype=np.uint8)
    px[mask] = rgba
    return Raster(px)


def halves(raster: Raster) -> tuple[Raster, Raster]:
    return (Raster(raster.pixels[:, :SIZE // 2].copy()),
            Raster(raster.pixels[:, SIZE // 2:].copy()))


BLUE, RED = (20, 60, 200, 255), (200, 30, 30, 255)
play_l, play_r = halves(shape_raster("play", BLUE))
rec_l, rec_r = halves(shape_raster("record", RED))
assets = MemoryAssets({
    "bg.png": Raster.solid(400, 300, (245, 245, 245, 255)),
    "play-l.png": play_l, "play-r.png": play_r,
    "rec-l.png": rec_l, "rec-r.png": rec_r,
})

# The two icons are groups of two half-glyph bitmap fragments each; the rest
# of the page is a background, a title, and a hairline divider.
def frag(name, image, x, y):
    return {"name": name, "kind": "bitmap", "image": image,
            "frame": {"x": x, "y": y, "w": 12, "h": 24}}

SCREEN = {
    "name": "player", "width": 400, "height": 300,
    "root": {"name": "page", "kind": "group",
             "frame": {"x": 0, "y": 0, "w": 400, "h": 300},
             "children": [
                 {"name": "bg", "kind": "bitmap", "image": "bg.png",
                  "frame": {"x": 0, "y": 0, "w": 400, "h": 300}},
                 {"name": "title", "kind": "text", "text": "Player",
                  "frame": {"x": 150, "y": 20, "w": 100, "h": 24}},
                 {"name": "divider", "kind": "shape",
                  "frame": {"x": 20, "y": 60, "w": 360, "h": 2}},
                 {"name": "play", "kind": "group",
                  "frame": {"x": 60, "y": 120, "w": 24, "h": 24},
                  "children": [frag("play-left", "play-l.png", 60, 120),
                               frag("play-right", "play-r.png", 72, 120)]},
                 {"name": "record", "kind": "group",
                  "frame": {"x": 140, "y": 120, "w": 24, "h": 24},
                  "children": [frag("rec-left", "rec-l.png", 140, 120),
                               frag("rec-right", "rec-r.png", 152, 120)]},
             ]},
}

artifact = parse_artifact(json.dumps(SCREEN))
leaves = leaf_components(artifact)
names = {n.id: n.name for n in leaves}

# 1. compose: agglomerate, cut, filter
clusters = cut_dendrogram(hac(leaves), threshold=0.6)
verdicts = filter_icons(clusters, artifact, assets=assets)
accepted = [v for v in verdicts if v.accepted]
print(f"compose: {len(clusters)} clusters, {len(accepted)} accepted as icons")
for v in verdicts:
    members = "{" + ", ".join(names[i] for i in sorted(v.members)) + "}"
    print(f"  {'icon  ' if v.accepted else 'reject'} {members} "
          f"{'' if v.accepted else '(' + v.reason + ')'}")

# 2. a tiny label model: jittered redraws of each glyph, six per class
samples = [(shape_raster(k, c, dx, dy), k)
           for k, c in (("play", BLUE), ("record", RED))
           for dx, dy in ((0, 0), (1, 0), (-1, 1), (2, -1), (0, 2), (-2, 0))]
model = train_centroids(samples)

# 3. per icon: composite, vectorize, color, label, snippet
icons = []
for v in sorted(accepted, key=lambda v: min(v.members)):
    raster = compose_raster(v, artifact, assets)
    outlines = [smooth_polygon(approximate_polygon(p, d_max=1.0), smoothness=0.75)
                for p in trace_paths(binarize(raster))]
    label, score = classify(raster, model).top
    color = primary_color(raster).primary or "none"
    snippet = render_snippet(label, color)
    w, h = raster.pixels.shape[1], raster.pixels.shape[0]
    icons.append({"name": label, "outlines": outlines, "w": w, "h": h,
                  "color": color, "score": score, "snippet": snippet})
    print(f"icon {label!r}: score {score:.3f}, color {color}, "
          f"{len(outlines)} outline(s), {snippet.html}")

# 4. font manifest + code
manifest = build_glyph_set([(i["name"], i["outlines"], i["w"], i["h"])
                            for i in icons], family="player-icons")
css = render_css(manifest)
gallery = render_gallery("Player icons", [
    {"name": i["name"], "snippet": i["snippet"].html, "color": i["color"],
     "label": i["name"], "svg": svg_document(i["outlines"], i["w"], i["h"])}
    for i in icons])

out = Path(tempfile.mkdtemp(prefix="iconforge-demo-"))
for i in icons:
    (out / f"{i['name']}.svg").write_text(svg_document(i["outlines"], i["w"], i["h"]))
(out / "icons.css").write_text(css)
(out / "index.html").write_text(gallery)
(out / "manifest.json").write_text(manifest.to_json())
print(f"\nwrote {len(icons)} svg files, icons.css, index.html, manifest.json -> {out}")
for glyph in manifest.glyphs:
    print(f"  U+{glyph.codepoint:04X} {glyph.name}")

# 5. score the run
truth = CompositionTruth(icons=[
    frozenset(n.id for n in leaves if n.name.startswith("play-")),
    frozenset(n.id for n in leaves if n.name.startswith("rec-")),
])
report = composition_metrics([frozenset(v.members) for v in accepted], truth)
print(f"\ncomposition vs truth: P {report.precision:.2f} "
      f"R {report.recall:.2f} F1 {report.f1:.2f}")
reference = '<i class="icon-play blue"></i>'
print(f"bleu vs reference snippet: {bleu(icons[0]['snippet'].html, reference):.3f}")
