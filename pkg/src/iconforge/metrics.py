"""Evaluation: composition P/R/F1, label accuracy, and BLEU for code snippets."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .artifact import DesignArtifact
from . import composer


@dataclass
class CompositionTruth:
    """Ground-truth icons for one artifact: disjoint component-id sets."""

    icons: list[frozenset[int]]

    def __post_init__(self):
        seen: set[int] = set()
        for icon in self.icons:
            if seen & icon:
                raise ValueError("truth icons must be disjoint")
            seen |= icon


@dataclass
class EvalReport:
    precision: float
    recall: float
    f1: float
    predicted: int
    truth: int
    correct: int


def harmonic_f1(precision: float, recall: float) -> float:
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def _jaccard(a: frozenset, b: frozenset) -> float:
    union = len(a | b)
    return len(a & b) / union if union else 0.0


def composition_metrics(predicted: list[frozenset[int]], truth: CompositionTruth,
                        jaccard: float | None = None) -> EvalReport:
    """Score predicted member sets against truth icons, matched one-to-one.

    Default mode requires exact set equality; passing a jaccard threshold
    relaxes matching to best-overlap >= threshold.
    """
    if not truth.icons:
        raise ValueError("truth has no icons")
    predicted = [frozenset(p) for p in predicted]
    if jaccard is None:
        truth_sets = set(truth.icons)
        correct = sum(1 for p in predicted if p in truth_sets)
    else:
        if not 0.0 < jaccard <= 1.0:
            raise ValueError("jaccard threshold must lie in (0, 1]")
        candidates = []
        for pi, p in enumerate(predicted):
            for ti, t in enumerate(truth.icons):
                score = _jaccard(p, t)
                if score >= jaccard:
                    candidates.append((-score, pi, ti))
        used_p: set[int] = set()
        used_t: set[int] = set()
        correct = 0
        for _, pi, ti in sorted(candidates):
            if pi in used_p or ti in used_t:
                continue
            used_p.add(pi)
            used_t.add(ti)
            correct += 1
    precision = correct / len(predicted) if predicted else 0.0
    recall = correct / len(truth.icons)
    return EvalReport(precision=precision, recall=recall, f1=harmonic_f1(precision, recall),
                      predicted=len(predicted), truth=len(truth.icons), correct=correct)


def classification_accuracy(predictions: dict[str, str], truth: dict[str, str]) -> float:
    """Exact-match fraction over identical icon key sets."""
    if not truth:
        raise ValueError("truth is empty")
    if set(predictions) != set(truth):
        missing = sorted(set(truth) ^ set(predictions))[:5]
        raise ValueError(f"prediction and truth icon sets differ (e.g. {missing})")
    hits = sum(1 for icon, label in truth.items() if predictions[icon] == label)
    return hits / len(truth)


_SOLO_TOKENS = set('<>="\'/(){};:')


def tokenize_code(text: str) -> list[str]:
    """Case-insensitive markup tokenization; listed punctuation stands alone."""
    out = []
    for ch in text.lower():
        if ch in _SOLO_TOKENS:
            out.append(f" {ch} ")
        else:
            out.append(ch)
    return "".join(out).split()


def _ngram_counts(tokens: list[str], n: int) -> dict[tuple[str, ...], int]:
    counts: dict[tuple[str, ...], int] = {}
    for i in range(len(tokens) - n + 1):
        gram = tuple(tokens[i:i + n])
        counts[gram] = counts.get(gram, 0) + 1
    return counts


def bleu(candidate: str, reference: str, n_max: int = 4) -> float:
    """Single-reference BLEU with uniform n-gram weights and brevity penalty.

    Orders where candidate and reference both lack n-grams are skipped as
    neutral, so bleu(x, x) is 1.0 even for very short strings; an order where
    only the candidate misses scores 0 overall.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    cand = tokenize_code(candidate)
    ref = tokenize_code(reference)
    if not cand or not ref:
        raise ValueError("candidate and reference must tokenize to something")

    log_sum = 0.0
    weight = 1.0 / n_max
    for n in range(1, n_max + 1):
        cgrams = _ngram_counts(cand, n)
        rgrams = _ngram_counts(ref, n)
        total = sum(cgrams.values())
        if total == 0 and not rgrams:
            continue  # both too short for this order
        clipped = sum(min(count, rgrams.get(gram, 0)) for gram, count in cgrams.items())
        if clipped == 0:
            return 0.0
        log_sum += weight * math.log(clipped / total)

    c, r = len(cand), len(ref)
    brevity = 1.0 if c > r else math.exp(1.0 - r / c)
    return brevity * math.exp(log_sum)


def comparison_table(artifact: DesignArtifact, truth: CompositionTruth,
                     weights: composer.Weights | None = None, threshold: float = 0.6,
                     policy: composer.IconPolicy | None = None, bandwidth: float = 50.0,
                     eps: float = 30.0, min_pts: int = 2, assets=None) -> list[dict]:
    """Run every composition method on one artifact and score each against truth.

    Methods: correlation clustering with the blended weights, the two geometric
    baselines, and one single-signal ablation per correlation term. All
    predictions pass the same icon policy filter before scoring.
    """
    components = [n for n in artifact.nodes() if n.is_leaf]
    if weights is None:
        weights = composer.Weights()

    def accepted(clusters: list[set[int]]) -> list[frozenset[int]]:
        tagged = composer.filter_icons(clusters, artifact, policy, assets)
        return [c.members for c in tagged if c.accepted]

    def run_hac(w: composer.Weights) -> list[frozenset[int]]:
        return accepted(composer.cut_dendrogram(composer.hac(components, w), threshold))

    rows = []
    methods: list[tuple[str, list[frozenset[int]]]] = [
        ("hac", run_hac(weights)),
        ("mean-shift", accepted(composer.mean_shift(components, bandwidth))),
        ("dbscan", accepted(composer.dbscan(components, eps, min_pts)[0])),
        ("kind-only", run_hac(composer.Weights(1.0, 0.0, 0.0))),
        ("hierarchy-only", run_hac(composer.Weights(0.0, 1.0, 0.0))),
        ("overlap-only", run_hac(composer.Weights(0.0, 0.0, 1.0))),
    ]
    for name, prediction in methods:
        report = composition_metrics(prediction, truth)
        rows.append({
            "method": name,
            "precision": report.precision,
            "recall": report.recall,
            "f1": report.f1,
            "predicted": report.predicted,
            "correct": report.correct,
        })
    return rows


def aggregate_reports(reports: list[EvalReport]) -> EvalReport:
    """Pool correct/predicted/truth counts across artifacts, then recompute P/R/F1."""
    if not reports:
        raise ValueError("nothing to aggregate")
    predicted = sum(r.predicted for r in reports)
    truth = sum(r.truth for r in reports)
    correct = sum(r.correct for r in reports)
    precision = correct / predicted if predicted else 0.0
    recall = correct / truth if truth else 0.0
    return EvalReport(precision=precision, recall=recall, f1=harmonic_f1(precision, recall),
                      predicted=predicted, truth=truth, correct=correct)
