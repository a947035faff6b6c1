"""Design artifact documents: a JSON component tree with absolute pixel frames.

Every component carries a name, a frame, an optional text payload, and an
optional image asset reference. Groups nest; bitmap/shape/text nodes are
leaves. Node ids are assigned densely in pre-order, so document order doubles
as z-order (later ids paint on top).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

KINDS = ("group", "bitmap", "shape", "text")


class ArtifactError(ValueError):
    """Malformed or invalid artifact document; carries the offending node path."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle in absolute canvas pixels."""

    x: float
    y: float
    w: float
    h: float

    @property
    def area(self) -> float:
        return self.w * self.h

    @property
    def center(self) -> tuple[float, float]:
        return (self.x + self.w / 2.0, self.y + self.h / 2.0)

    def union(self, other: "Rect") -> "Rect":
        x0 = min(self.x, other.x)
        y0 = min(self.y, other.y)
        x1 = max(self.x + self.w, other.x + other.w)
        y1 = max(self.y + self.h, other.y + other.h)
        return Rect(x0, y0, x1 - x0, y1 - y0)


@dataclass
class Node:
    id: int
    name: str
    kind: str
    frame: Rect
    text: str | None = None
    image: str | None = None
    children: list["Node"] = field(default_factory=list)
    parent_id: int | None = None

    @property
    def is_leaf(self) -> bool:
        return self.kind != "group"


@dataclass
class DesignArtifact:
    name: str
    width: int
    height: int
    root: Node

    def nodes(self):
        """All nodes in pre-order (document order)."""
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def node_by_id(self, node_id: int) -> Node:
        for node in self.nodes():
            if node.id == node_id:
                return node
        raise KeyError(f"no node with id {node_id}")


def _require(value, types, what: str, path: str):
    if not isinstance(value, types) or isinstance(value, bool):
        raise ArtifactError(f"{what} must be {getattr(types, '__name__', 'number')}", path)
    return value


def _parse_frame(obj, path: str) -> Rect:
    if not isinstance(obj, dict):
        raise ArtifactError("frame must be an object", path)
    vals = []
    for key in ("x", "y", "w", "h"):
        if key not in obj:
            raise ArtifactError(f"frame is missing '{key}'", path)
        vals.append(_require(obj[key], (int, float), f"frame.{key}", path))
    x, y, w, h = vals
    if w < 0 or h < 0:
        raise ArtifactError(f"frame has negative size {w}x{h}", path)
    return Rect(float(x), float(y), float(w), float(h))


def _clamp(frame: Rect, width: float, height: float) -> Rect:
    x0 = min(max(frame.x, 0.0), width)
    y0 = min(max(frame.y, 0.0), height)
    x1 = min(max(frame.x + frame.w, 0.0), width)
    y1 = min(max(frame.y + frame.h, 0.0), height)
    clamped = Rect(x0, y0, max(x1 - x0, 0.0), max(y1 - y0, 0.0))
    return frame if clamped == frame else clamped


def _parse_node(obj, path: str, counter: list[int], canvas: tuple[float, float],
                parent_id: int | None) -> Node:
    if not isinstance(obj, dict):
        raise ArtifactError("node must be an object", path)
    name = _require(obj.get("name", ""), str, "name", path)
    kind = obj.get("kind")
    if kind not in KINDS:
        raise ArtifactError(f"unknown kind {kind!r}", path)
    frame = _clamp(_parse_frame(obj.get("frame"), path), *canvas)

    text = obj.get("text")
    image = obj.get("image")
    if text is not None:
        _require(text, str, "text", path)
        if kind != "text":
            raise ArtifactError(f"{kind} node cannot carry text", path)
    if image is not None:
        _require(image, str, "image", path)
        if kind not in ("bitmap", "shape"):
            raise ArtifactError(f"{kind} node cannot carry an image", path)

    node_id = counter[0]
    counter[0] += 1
    node = Node(id=node_id, name=name, kind=kind, frame=frame,
                text=text, image=image, parent_id=parent_id)

    children = obj.get("children")
    if kind != "group":
        if children:
            raise ArtifactError(f"{kind} node cannot have children", path)
        return node
    if children is None:
        children = []
    if not isinstance(children, list):
        raise ArtifactError("children must be a list", path)
    for i, child in enumerate(children):
        node.children.append(
            _parse_node(child, f"{path}.children[{i}]", counter, canvas, node_id))
    return node


def parse_artifact(text: str) -> DesignArtifact:
    """Parse an artifact JSON document, validating structure and clamping frames."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ArtifactError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ArtifactError("document must be an object")
    name = _require(doc.get("name", ""), str, "name", "$")
    width = _require(doc.get("width"), (int, float), "width", "$")
    height = _require(doc.get("height"), (int, float), "height", "$")
    if width <= 0 or height <= 0:
        raise ArtifactError(f"canvas size {width}x{height} must be positive")
    if "root" not in doc:
        raise ArtifactError("document is missing 'root'")
    root = _parse_node(doc["root"], "$.root", [0], (float(width), float(height)), None)
    if root.kind != "group":
        raise ArtifactError("root must be a group", "$.root")
    return DesignArtifact(name=name, width=int(width), height=int(height), root=root)


def load_artifact(path) -> DesignArtifact:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_artifact(fh.read())


def _node_to_obj(node: Node) -> dict:
    obj: dict = {
        "name": node.name,
        "kind": node.kind,
        "frame": {"x": node.frame.x, "y": node.frame.y, "w": node.frame.w, "h": node.frame.h},
    }
    if node.text is not None:
        obj["text"] = node.text
    if node.image is not None:
        obj["image"] = node.image
    if node.kind == "group":
        obj["children"] = [_node_to_obj(c) for c in node.children]
    return obj


def serialize_artifact(artifact: DesignArtifact) -> str:
    """Inverse of parse_artifact for in-canvas documents."""
    doc = {
        "name": artifact.name,
        "width": artifact.width,
        "height": artifact.height,
        "root": _node_to_obj(artifact.root),
    }
    return json.dumps(doc, indent=2)


def leaf_components(artifact: DesignArtifact) -> list[Node]:
    """All non-group components in document order."""
    return [node for node in artifact.nodes() if node.is_leaf]
