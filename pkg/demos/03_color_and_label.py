"""Name an icon's dominant color and predict a label for it.

Color detection counts opaque pixels inside named HSV bands; the baseline
labeler is a nearest-centroid classifier over 3-D color histograms. Both are
exercised here on synthetic rasters so the demo needs no image files.

Run: python3 demos/03_color_and_label.py
"""
import time

import numpy as np

from iconforge import (DEFAULT_MASKS, Raster, classification_accuracy,
                       classify, primary_color, rgb_to_hsv, train_centroids)
from iconforge.synthetic import make_color_dataset

print("hsv bands:", ", ".join(m.name for m in DEFAULT_MASKS))
print("pure blue (0,0,255) ->", rgb_to_hsv(0, 0, 255))

# A mostly-blue icon with a white badge: ratios are per-mask pixel shares.
px = np.zeros((16, 16, 4), dtype=np.uint8)
px[:, :] = (20, 60, 230, 255)
px[2:6, 10:14] = (250, 250, 250, 255)
report = primary_color(Raster(px))
print(f"\nbadge icon -> primary {report.primary!r}")
for name, ratio in sorted(report.ratios.items(), key=lambda kv: -kv[1]):
    if ratio:
        print(f"  {name:6s} {ratio:.3f}")

# Fully transparent pixels never vote; an empty raster has no primary at all.
print("transparent raster ->", primary_color(Raster.blank(8, 8)).primary)

# Labeler: train per-class centroids on noisy solids, then measure on a
# held-out split. Scores are cosine similarities mapped to [0, 1].
train, test = make_color_dataset(seed=11, train_per_class=40, test_per_class=20)
model = train_centroids(train)
print(f"\ncentroid model over {len(model.labels)} labels")

predicted, expected = {}, {}
start = time.perf_counter()
for i, (raster, label) in enumerate(test):
    predicted[i] = classify(raster, model).top[0]
    expected[i] = label
elapsed = (time.perf_counter() - start) / len(test)
acc = classification_accuracy(predicted, expected)
print(f"accuracy {acc:.3f} on {len(test)} held-out rasters "
      f"({elapsed * 1000:.2f} ms each)")

sample, truth = test[0]
ranked = classify(sample, model, k=3)
print(f"top-3 for a {truth!r} sample:")
for label, score in ranked.ranked:
    print(f"  {label:10s} {score:.4f}")
