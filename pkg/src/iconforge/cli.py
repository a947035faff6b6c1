"""Command-line front end wiring the pipeline end to end.

Exit codes: 0 success, 1 validation error, 2 I/O error, 64 usage error.
All subcommands are deterministic; `--parallel` only fans out pure per-icon
work and collects results in order, so outputs are byte-identical at any
parallelism degree.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import codegen, colorizer, composer, labeler, metrics, tracer, vocabminer
from .artifact import DesignArtifact, leaf_components, load_artifact
from .raster import AssetLoader, Raster


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # route argparse failures to exit code 64 instead of SystemExit(2)
    def error(self, message):
        raise _UsageError(message)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("-o", "--out", help="output file or directory")
    p.add_argument("--config", help="JSON file supplying defaults for any flag")


def _add_compose_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--threshold", type=float, help="dendrogram cut threshold (default 0.6)")
    p.add_argument("--weights", help="correlation weights a,b,c (default 0.333,0.333,0.333)")
    p.add_argument("--max-area", type=float, dest="max_area",
                   help="max cluster bbox / canvas area ratio (default 0.04)")
    p.add_argument("--min-aspect", type=float, dest="min_aspect",
                   help="min bbox aspect ratio w/h (default 0.333)")
    p.add_argument("--max-aspect", type=float, dest="max_aspect",
                   help="max bbox aspect ratio w/h (default 3.0)")
    p.add_argument("--max-coverage", type=float, dest="max_coverage",
                   help="max opaque pixel coverage (default 0.95)")
    p.add_argument("--assets", help="base directory for image assets (default: artifact's directory)")


def _add_tracer_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dmax", type=float, help="polygon fit tolerance in pixels (default 1.0)")
    p.add_argument("--smooth", type=float, help="Bezier smoothness s in [0,1] (default 0.55)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="iconforge",
                     description="Turn UI design artifacts into icon glyphs, colors, labels, and code.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    p = sub.add_parser("compose", help="cluster artifact components into icon candidates")
    p.add_argument("artifact", help="design artifact JSON file")
    _add_compose_flags(p)
    p.add_argument("--parallel", type=int, help="worker count (default 1)")
    _add_common(p)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("trace", help="vectorize an icon raster into an SVG outline")
    p.add_argument("raster", help="RGBA raster file")
    _add_tracer_flags(p)
    _add_common(p)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("color", help="print the primary color of a raster")
    p.add_argument("raster", help="RGBA raster file")
    p.add_argument("--masks", help="JSON file overriding the HSV color masks")
    _add_common(p)
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("classify", help="predict labels for an icon raster")
    p.add_argument("raster", help="RGBA raster file")
    p.add_argument("--model", required=True, help="classifier model JSON file")
    p.add_argument("-k", type=int, default=1, help="number of ranked labels (default 1)")
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("train", help="train the color-histogram classifier from a labeled directory")
    p.add_argument("data", help="directory of per-label subdirectories of rasters")
    _add_common(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("generate", help="run the full pipeline: artifact to glyphs, css, html, report")
    p.add_argument("artifact", help="design artifact JSON file")
    _add_compose_flags(p)
    _add_tracer_flags(p)
    p.add_argument("--model", help="classifier model JSON file")
    p.add_argument("--predictions", help="JSONL label predictions consumed in place of the classifier")
    p.add_argument("--family", help="font family name (default: sanitized artifact name)")
    p.add_argument("--parallel", type=int, help="per-icon worker count (default 1)")
    _add_common(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("mine", help="mine association rules and a label graph from a corpus")
    p.add_argument("corpus", help="JSONL corpus of {icon, labels} records")
    p.add_argument("--support", type=float, help="minimum pair support (default 0.001)")
    p.add_argument("--confidence", type=float, help="minimum rule confidence (default 0.2)")
    p.add_argument("--min-class-size", type=int, dest="min_class_size",
                   help="drop labels occurring fewer than N times before mining")
    _add_common(p)
    p.set_defaults(func=cmd_mine)

    pe = sub.add_parser("eval", help="score pipeline outputs against ground truth")
    esub = pe.add_subparsers(dest="target", metavar="TARGET", required=True)

    p = esub.add_parser("compose", help="composition precision/recall/F1")
    p.add_argument("--clusters", action="append", required=True,
                   help="cluster JSON file (repeatable, paired with --truth)")
    p.add_argument("--truth", action="append", required=True,
                   help="truth JSON file (repeatable)")
    p.add_argument("--artifact", action="append",
                   help="artifact JSON file (repeatable; enables --compare)")
    p.add_argument("--compare", action="store_true",
                   help="add the clustering method comparison table (needs --artifact)")
    p.add_argument("--jaccard", type=float,
                   help="relaxed matching: count a prediction when overlap >= this threshold")
    _add_compose_flags(p)
    p.add_argument("--bandwidth", type=float, help="mean-shift bandwidth (default 50)")
    p.add_argument("--eps", type=float, help="dbscan eps (default 30)")
    p.add_argument("--min-pts", type=int, dest="min_pts", help="dbscan min points (default 2)")
    _add_common(p)
    p.set_defaults(func=cmd_eval_compose)

    p = esub.add_parser("classify", help="classification accuracy")
    p.add_argument("--predictions", required=True, help="JSONL of {icon, label, score}")
    p.add_argument("--truth", required=True, help="JSONL of {icon, label}")
    _add_common(p)
    p.set_defaults(func=cmd_eval_classify)

    p = esub.add_parser("bleu", help="BLEU between candidate and reference code files")
    p.add_argument("--candidate", required=True, help="candidate code file")
    p.add_argument("--reference", required=True, help="reference code file")
    p.add_argument("--n", type=int, default=4, help="max n-gram order (default 4)")
    _add_common(p)
    p.set_defaults(func=cmd_eval_bleu)

    return parser


# -- configuration plumbing ------------------------------------------------

def _cfg(args, key: str, default):
    """Flag value if given, else config-file value, else the default."""
    value = getattr(args, key, None)
    if value is not None:
        return value
    config = getattr(args, "_config", None) or {}
    return config.get(key, default)


def _weights(args) -> composer.Weights:
    raw = _cfg(args, "weights", None)
    if raw is None:
        return composer.Weights()
    if isinstance(raw, str):
        parts = raw.split(",")
    else:
        parts = list(raw)
    if len(parts) != 3:
        raise ValueError("weights must be three comma-separated numbers a,b,c")
    a, b, c = (float(x) for x in parts)
    return composer.Weights(a, b, c)


def _policy(args) -> composer.IconPolicy:
    return composer.IconPolicy(
        max_area_ratio=float(_cfg(args, "max_area", 0.04)),
        min_aspect=float(_cfg(args, "min_aspect", 1.0 / 3.0)),
        max_aspect=float(_cfg(args, "max_aspect", 3.0)),
        max_coverage=float(_cfg(args, "max_coverage", 0.95)),
    )


def _assets_for(args, artifact_path: str) -> AssetLoader:
    base = _cfg(args, "assets", None)
    if base is None:
        base = Path(artifact_path).parent
    return AssetLoader(base)


def _parallel(args) -> int:
    degree = int(_cfg(args, "parallel", 1))
    if degree < 1:
        raise ValueError("--parallel must be at least 1")
    return degree


def _emit_json(args, payload) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _read_jsonl(path, required: tuple[str, ...]) -> list[dict]:
    records = []
    text = Path(path).read_text(encoding="utf-8")
    for ln, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: line {ln}: {exc}") from exc
        if not isinstance(obj, dict) or any(key not in obj for key in required):
            raise ValueError(f"{path}: line {ln}: expected an object with {required}")
        records.append(obj)
    return records


# -- subcommands -----------------------------------------------------------

def _tagged_clusters(args, artifact: DesignArtifact, assets) -> list[composer.IconCluster]:
    components = leaf_components(artifact)
    if not components:
        raise ValueError("artifact has no leaf components")
    dendrogram = composer.hac(components, _weights(args))
    clusters = composer.cut_dendrogram(dendrogram, float(_cfg(args, "threshold", 0.6)))
    return composer.filter_icons(clusters, artifact, _policy(args), assets)


def _clusters_payload(artifact: DesignArtifact, tagged: list[composer.IconCluster]) -> dict:
    return {
        "artifact": artifact.name,
        "clusters": [
            {
                "id": index,
                "members": sorted(c.members),
                "bbox": {"x": c.bbox.x, "y": c.bbox.y, "w": c.bbox.w, "h": c.bbox.h},
                "accepted": c.accepted,
                "reason": c.reason,
            }
            for index, c in enumerate(tagged)
        ],
    }


def cmd_compose(args) -> int:
    _parallel(args)  # validated even though one artifact needs no fan-out
    artifact = load_artifact(args.artifact)
    tagged = _tagged_clusters(args, artifact, _assets_for(args, args.artifact))
    _emit_json(args, _clusters_payload(artifact, tagged))
    return 0


def cmd_trace(args) -> int:
    raster = Raster.open(args.raster)
    bitmap = tracer.binarize(raster)
    paths = tracer.trace_paths(bitmap)
    if not paths:
        raise ValueError("raster has no dark pixels to trace")
    d_max = float(_cfg(args, "dmax", 1.0))
    smooth = float(_cfg(args, "smooth", 0.55))
    outlines = [tracer.smooth_polygon(tracer.approximate_polygon(p, d_max), smooth) for p in paths]
    svg = tracer.svg_document(outlines, bitmap.width, bitmap.height)
    out = Path(args.out) if args.out else Path(args.raster).with_suffix(".svg")
    out.write_text(svg, encoding="utf-8")
    print(out)
    return 0


def cmd_color(args) -> int:
    raster = Raster.open(args.raster)
    masks = None
    if args.masks:
        masks = colorizer.load_masks(Path(args.masks).read_text(encoding="utf-8"))
    report = colorizer.primary_color(raster, masks)
    name = report.primary if report.primary is not None else "none"
    if getattr(args, "out", None):
        Path(args.out).write_text(name + "\n", encoding="utf-8")
    else:
        print(name)
    return 0


def cmd_classify(args) -> int:
    raster = Raster.open(args.raster)
    model = labeler.ClassifierModel.load(args.model)
    prediction = labeler.classify(raster, model, k=args.k)
    _emit_json(args, {"predictions": [{"label": l, "score": s} for l, s in prediction.ranked]})
    return 0


def cmd_train(args) -> int:
    root = Path(args.data)
    if not root.is_dir():
        raise ValueError(f"{root} is not a directory")
    samples = []
    for sub in sorted(p for p in root.iterdir() if p.is_dir()):
        for file in sorted(sub.glob("*.png")):
            samples.append((Raster.open(file), sub.name))
    if not samples:
        raise ValueError(f"no labeled .png files under {root}")
    model = labeler.train_centroids(samples)
    out = Path(args.out) if args.out else Path("model.json")
    model.save(out)
    print(out)
    return 0


def _load_predictions(path) -> dict[str, tuple[str, float]]:
    table = {}
    for obj in _read_jsonl(path, ("icon", "label")):
        table[str(obj["icon"])] = (str(obj["label"]), float(obj.get("score", 1.0)))
    return table


def cmd_generate(args) -> int:
    artifact = load_artifact(args.artifact)
    assets = _assets_for(args, args.artifact)
    degree = _parallel(args)
    d_max = float(_cfg(args, "dmax", 1.0))
    smooth = float(_cfg(args, "smooth", 0.55))
    model = labeler.ClassifierModel.load(args.model) if args.model else None
    predictions = _load_predictions(args.predictions) if args.predictions else None

    tagged = _tagged_clusters(args, artifact, assets)
    accepted = [c for c in tagged if c.accepted]

    def build(item):
        index, cluster = item
        key = f"icon{index:03d}"
        base = {"key": key, "cluster": cluster}
        try:
            raster = tracer.compose_raster(cluster, artifact, assets)
        except (OSError, ValueError) as exc:
            return {**base, "skip": f"compose failed: {exc}"}
        bitmap = tracer.binarize(raster)
        if bitmap.black_count == 0:
            return {**base, "skip": "no dark pixels after binarization"}
        paths = tracer.trace_paths(bitmap)
        outlines = [tracer.smooth_polygon(tracer.approximate_polygon(p, d_max), smooth)
                    for p in paths]
        color = colorizer.primary_color(raster).primary
        label, score = None, None
        if predictions is not None:
            hit = predictions.get(key)
            if hit is not None:
                label, score = hit
        elif model is not None:
            label, score = labeler.classify(raster, model).top
        if label is None:
            # unlabeled icons fall back to the first member's designer name
            first = artifact.node_by_id(min(cluster.members))
            label = first.name if codegen.sanitize_label(first.name) else key
        return {**base, "raster": raster, "outlines": outlines, "color": color,
                "label": label, "score": score}

    if degree > 1:
        with ThreadPoolExecutor(max_workers=degree) as pool:
            results = list(pool.map(build, enumerate(accepted)))
    else:
        results = [build(item) for item in enumerate(accepted)]

    family = _cfg(args, "family", None) or codegen.sanitize_label(artifact.name) or "icons"
    used: dict[str, int] = {}
    glyph_inputs, gallery, icon_meta, skipped = [], [], [], []
    svg_docs: dict[str, str] = {}
    for res in results:
        cluster: composer.IconCluster = res["cluster"]
        if "skip" in res:
            skipped.append({"key": res["key"], "members": sorted(cluster.members),
                            "reason": res["skip"]})
            continue
        slug = codegen.sanitize_label(res["label"]) or res["key"]
        used[slug] = used.get(slug, 0) + 1
        if used[slug] > 1:
            slug = f"{slug}-{used[slug]}"
        raster, outlines = res["raster"], res["outlines"]
        glyph_inputs.append((slug, outlines, raster.width, raster.height))
        svg_docs[slug] = tracer.svg_document(outlines, raster.width, raster.height)
        snippet = codegen.render_snippet(slug, res["color"] or "none")
        gallery.append({"name": slug, "snippet": snippet.html, "svg": svg_docs[slug],
                        "label": res["label"], "color": res["color"] or "none"})
        icon_meta.append({
            "key": res["key"], "name": slug, "label": res["label"], "score": res["score"],
            "color": res["color"], "members": sorted(cluster.members),
            "bbox": {"x": cluster.bbox.x, "y": cluster.bbox.y,
                     "w": cluster.bbox.w, "h": cluster.bbox.h},
            "snippet": snippet.html, "svg_file": f"glyphs/{slug}.svg",
        })

    if not glyph_inputs:
        raise ValueError(f"no icons produced from {args.artifact}"
                         + (f" ({skipped[0]['reason']})" if skipped else ""))
    out_dir = Path(args.out) if args.out else Path("out")
    glyph_dir = out_dir / "glyphs"
    glyph_dir.mkdir(parents=True, exist_ok=True)

    manifest = tracer.build_glyph_set(glyph_inputs, family)
    for glyph in manifest.glyphs:
        (glyph_dir / f"{glyph.name}.svg").write_text(svg_docs[glyph.name], encoding="utf-8")
    (out_dir / "manifest.json").write_text(manifest.to_json() + "\n", encoding="utf-8")
    (out_dir / "icons.css").write_text(codegen.render_css(manifest), encoding="utf-8")
    (out_dir / "index.html").write_text(
        codegen.render_gallery(artifact.name or family, gallery), encoding="utf-8")
    for meta, glyph in zip(icon_meta, manifest.glyphs):
        meta["codepoint"] = f"U+{glyph.codepoint:04X}"
    report = {
        "artifact": artifact.name,
        "family": family,
        "icons": icon_meta,
        "skipped": skipped,
        "clusters": _clusters_payload(artifact, tagged)["clusters"],
    }
    (out_dir / "report.json").write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
    print(f"{len(manifest.glyphs)} glyphs -> {out_dir}")
    return 0


def cmd_mine(args) -> int:
    corpus = vocabminer.parse_corpus(Path(args.corpus).read_text(encoding="utf-8"))
    min_size = _cfg(args, "min_class_size", None)
    if min_size is not None:
        min_size = int(min_size)
        counts: dict[str, int] = {}
        for item in corpus:
            for label in set(item.labels):
                counts[label] = counts.get(label, 0) + 1
        pruned = []
        for item in corpus:
            keep = [l for l in item.labels if counts[l] >= min_size]
            if keep:
                pruned.append(vocabminer.LabeledIcon(icon=item.icon, labels=keep,
                                                     raster=item.raster))
        corpus = pruned
    rules, graph = vocabminer.mine_rules(
        corpus,
        t_sup=float(_cfg(args, "support", 0.001)),
        t_conf=float(_cfg(args, "confidence", 0.2)),
    )
    payload = {
        "rules": [{"t1": r.antecedent, "t2": r.consequent,
                   "support": r.support, "confidence": r.confidence} for r in rules],
        "components": vocabminer.label_graph_components(graph),
    }
    _emit_json(args, payload)
    return 0


def _report_dict(report: metrics.EvalReport) -> dict:
    return {"precision": report.precision, "recall": report.recall, "f1": report.f1,
            "predicted": report.predicted, "truth": report.truth, "correct": report.correct}


def cmd_eval_compose(args) -> int:
    if len(args.clusters) != len(args.truth):
        raise ValueError("--clusters and --truth must be given the same number of times")
    if args.compare and not args.artifact:
        raise ValueError("--compare needs --artifact for each --truth")
    if args.artifact and len(args.artifact) != len(args.truth):
        raise ValueError("--artifact and --truth must be given the same number of times")

    per_artifact = []
    reports = []
    truths = []
    for cpath, tpath in zip(args.clusters, args.truth):
        cdoc = json.loads(Path(cpath).read_text(encoding="utf-8"))
        tdoc = json.loads(Path(tpath).read_text(encoding="utf-8"))
        predicted = [frozenset(entry["members"]) for entry in cdoc["clusters"]
                     if entry.get("accepted", True)]
        truth = metrics.CompositionTruth(icons=[frozenset(icon) for icon in tdoc["icons"]])
        truths.append(truth)
        report = metrics.composition_metrics(predicted, truth, jaccard=args.jaccard)
        reports.append(report)
        per_artifact.append({"artifact": cdoc.get("artifact", ""), **_report_dict(report)})

    payload = {"artifacts": per_artifact,
               "aggregate": _report_dict(metrics.aggregate_reports(reports))}

    if args.compare:
        pooled: dict[str, dict[str, int]] = {}
        order: list[str] = []
        for apath, truth in zip(args.artifact, truths):
            artifact = load_artifact(apath)
            rows = metrics.comparison_table(
                artifact, truth, weights=_weights(args),
                threshold=float(_cfg(args, "threshold", 0.6)), policy=_policy(args),
                bandwidth=float(_cfg(args, "bandwidth", 50.0)),
                eps=float(_cfg(args, "eps", 30.0)), min_pts=int(_cfg(args, "min_pts", 2)),
                assets=_assets_for(args, apath))
            for row in rows:
                if row["method"] not in pooled:
                    pooled[row["method"]] = {"predicted": 0, "correct": 0, "truth": 0}
                    order.append(row["method"])
                cell = pooled[row["method"]]
                cell["predicted"] += row["predicted"]
                cell["correct"] += row["correct"]
                cell["truth"] += len(truth.icons)
        table = []
        for method in order:
            cell = pooled[method]
            precision = cell["correct"] / cell["predicted"] if cell["predicted"] else 0.0
            recall = cell["correct"] / cell["truth"] if cell["truth"] else 0.0
            table.append({"method": method, "precision": precision, "recall": recall,
                          "f1": metrics.harmonic_f1(precision, recall), **cell})
        payload["comparison"] = table

    _emit_json(args, payload)
    return 0


def cmd_eval_classify(args) -> int:
    predicted = {str(o["icon"]): str(o["label"])
                 for o in _read_jsonl(args.predictions, ("icon", "label"))}
    truth = {str(o["icon"]): str(o["label"])
             for o in _read_jsonl(args.truth, ("icon", "label"))}
    accuracy = metrics.classification_accuracy(predicted, truth)
    _emit_json(args, {"accuracy": accuracy, "total": len(truth)})
    return 0


def cmd_eval_bleu(args) -> int:
    candidate = Path(args.candidate).read_text(encoding="utf-8")
    reference = Path(args.reference).read_text(encoding="utf-8")
    _emit_json(args, {"bleu": metrics.bleu(candidate, reference, n_max=args.n)})
    return 0


# -- entry point -----------------------------------------------------------

def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write(parser.format_usage())
        print(f"error: {exc}", file=sys.stderr)
        return 64
    except SystemExit as exc:  # argparse --help
        return 0 if exc.code in (0, None) else int(exc.code)

    try:
        config_path = getattr(args, "config", None)
        if config_path:
            loaded = json.loads(Path(config_path).read_text(encoding="utf-8"))
            if not isinstance(loaded, dict):
                raise ValueError(f"{config_path} must hold a JSON object")
            args._config = loaded
        return args.func(args)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (KeyError, TypeError) as exc:
        print(f"error: malformed input: {exc!r}", file=sys.stderr)
        return 1
