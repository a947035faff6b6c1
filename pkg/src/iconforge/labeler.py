"""Pluggable icon labeling with a color-histogram nearest-centroid baseline.

Features are 48-dimensional: 16 bins per RGB channel, each pixel weighted by
its alpha, L2-normalized. Classification scores cosine similarity against one
centroid per label, remapped to [0, 1]. External predictors can replace this
baseline at the pipeline level by supplying a predictions file.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .raster import Raster

BINS = 16
FEATURE_DIM = 3 * BINS


def extract_histogram(raster: Raster) -> np.ndarray:
    """Alpha-weighted RGB histogram, L2-normalized; all-transparent gives zeros."""
    px = raster.pixels
    weights = px[:, :, 3].astype(np.float64).ravel() / 255.0
    feature = np.empty(FEATURE_DIM)
    width = 256 // BINS
    for c in range(3):
        bins = px[:, :, c].astype(np.int64).ravel() // width
        feature[c * BINS:(c + 1) * BINS] = np.bincount(bins, weights=weights, minlength=BINS)
    norm = float(np.linalg.norm(feature))
    if norm == 0.0:
        return np.zeros(FEATURE_DIM)
    return feature / norm


@dataclass
class ClassifierModel:
    labels: list[str]
    centroids: np.ndarray                      # (len(labels), FEATURE_DIM), unit rows
    bins: int = BINS
    counts: dict[str, int] = field(default_factory=dict)  # training samples per label

    def to_json(self) -> str:
        doc = {
            "bins": self.bins,
            "labels": list(self.labels),
            "centroids": [[float(v) for v in row] for row in self.centroids],
            "counts": dict(self.counts),
        }
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ClassifierModel":
        doc = json.loads(text)
        labels = [str(x) for x in doc["labels"]]
        centroids = np.asarray(doc["centroids"], dtype=np.float64)
        if centroids.shape != (len(labels), FEATURE_DIM):
            raise ValueError(f"centroid matrix shape {centroids.shape} does not match labels")
        return cls(labels=labels, centroids=centroids,
                   bins=int(doc.get("bins", BINS)),
                   counts={str(k): int(v) for k, v in doc.get("counts", {}).items()})

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json())

    @classmethod
    def load(cls, path) -> "ClassifierModel":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(fh.read())


def train_centroids(samples) -> ClassifierModel:
    """Average the feature vectors per label and re-normalize.

    `samples` yields (raster, label) pairs; every label needs at least one
    sample and no sample may be fully transparent.
    """
    grouped: dict[str, list[np.ndarray]] = {}
    for raster, label in samples:
        feature = extract_histogram(raster)
        if not feature.any():
            raise ValueError(f"all-transparent training sample for label {label!r}")
        grouped.setdefault(str(label), []).append(feature)
    if not grouped:
        raise ValueError("no training samples")
    labels = sorted(grouped)
    centroids = np.empty((len(labels), FEATURE_DIM))
    for i, label in enumerate(labels):
        mean = np.mean(grouped[label], axis=0)
        norm = float(np.linalg.norm(mean))
        if norm == 0.0:
            raise ValueError(f"degenerate centroid for label {label!r}")
        centroids[i] = mean / norm
    counts = {label: len(grouped[label]) for label in labels}
    return ClassifierModel(labels=labels, centroids=centroids, counts=counts)


@dataclass(frozen=True)
class LabelPrediction:
    """Ranked (label, score) pairs, best first."""

    ranked: tuple[tuple[str, float], ...]

    @property
    def top(self) -> tuple[str, float]:
        return self.ranked[0]


def classify(raster: Raster, model: ClassifierModel, k: int = 1) -> LabelPrediction:
    """Top-k labels by cosine similarity mapped to [0, 1]; score ties break lexicographically."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if not model.labels:
        raise ValueError("model has no labels")
    feature = extract_histogram(raster)
    if not feature.any():
        raise ValueError("cannot classify an all-transparent raster")
    cosine = np.clip(model.centroids @ feature, -1.0, 1.0)
    scores = (1.0 + cosine) / 2.0
    order = sorted(range(len(model.labels)), key=lambda i: (-scores[i], model.labels[i]))
    k = min(k, len(model.labels))
    return LabelPrediction(ranked=tuple(
        (model.labels[i], float(scores[i])) for i in order[:k]))
