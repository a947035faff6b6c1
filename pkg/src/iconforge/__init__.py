"""iconforge: turn UI design artifacts into icon glyphs, colors, labels, and code.

The pipeline: parse a design artifact, cluster its scattered leaf components
into icons, vectorize each icon into smoothed Bezier outlines, detect its
primary color, predict a label, and emit HTML/CSS, with an evaluation harness
covering every stage.
"""

from .artifact import (
    ArtifactError,
    DesignArtifact,
    Node,
    Rect,
    leaf_components,
    load_artifact,
    parse_artifact,
    serialize_artifact,
)
from .codegen import CodeSnippet, render_css, render_gallery, render_snippet, sanitize_label
from .colorizer import (
    DEFAULT_MASKS,
    ColorMask,
    ColorReport,
    Hsv,
    load_masks,
    primary_color,
    rgb_to_hsv,
)
from .composer import (
    Dendrogram,
    IconCluster,
    IconPolicy,
    Merge,
    Weights,
    cut_dendrogram,
    dbscan,
    filter_icons,
    hac,
    iou,
    mean_shift,
    pair_correlation,
)
from .labeler import ClassifierModel, LabelPrediction, classify, extract_histogram, train_centroids
from .metrics import (
    CompositionTruth,
    EvalReport,
    aggregate_reports,
    bleu,
    classification_accuracy,
    comparison_table,
    composition_metrics,
    harmonic_f1,
    tokenize_code,
)
from .raster import AssetLoader, MemoryAssets, Raster, composite_over, resize_nearest
from .tracer import (
    BezierOutline,
    BinaryBitmap,
    DirectedPath,
    Glyph,
    GlyphManifest,
    Polygon,
    approximate_polygon,
    binarize,
    build_glyph_set,
    compose_raster,
    enclosed_area,
    outline_to_svg,
    smooth_polygon,
    svg_document,
    trace_paths,
)
from .vocabminer import (
    AssociationRule,
    LabeledIcon,
    LabelGraph,
    group_labels,
    label_graph_components,
    lexical_similarity,
    mine_rules,
    parse_corpus,
    visual_similarity,
)

__version__ = "0.1.0"

__all__ = [
    "ArtifactError", "DesignArtifact", "Node", "Rect",
    "leaf_components", "load_artifact", "parse_artifact", "serialize_artifact",
    "CodeSnippet", "render_css", "render_gallery", "render_snippet", "sanitize_label",
    "DEFAULT_MASKS", "ColorMask", "ColorReport", "Hsv",
    "load_masks", "primary_color", "rgb_to_hsv",
    "Dendrogram", "IconCluster", "IconPolicy", "Merge", "Weights",
    "cut_dendrogram", "dbscan", "filter_icons", "hac", "iou", "mean_shift",
    "pair_correlation",
    "ClassifierModel", "LabelPrediction", "classify", "extract_histogram", "train_centroids",
    "CompositionTruth", "EvalReport", "aggregate_reports", "bleu",
    "classification_accuracy", "comparison_table", "composition_metrics",
    "harmonic_f1", "tokenize_code",
    "AssetLoader", "MemoryAssets", "Raster", "composite_over", "resize_nearest",
    "BezierOutline", "BinaryBitmap", "DirectedPath", "Glyph", "GlyphManifest", "Polygon",
    "approximate_polygon", "binarize", "build_glyph_set", "compose_raster",
    "enclosed_area", "outline_to_svg", "smooth_polygon", "svg_document", "trace_paths",
    "AssociationRule", "LabeledIcon", "LabelGraph",
    "group_labels", "label_graph_components", "lexical_similarity", "mine_rules",
    "parse_corpus", "visual_similarity",
    "__version__",
]
