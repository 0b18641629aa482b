"""Normalized design document model and its JSON interchange format.

The model is immutable after parsing: nodes and documents are frozen
dataclasses holding tuples, so they can be shared across threads and
"mutated" only by building new values (see patches.py).

Coordinates are document-absolute. Fills are restricted to solid colors;
non-solid fill entries in the input are dropped with a logged warning.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from .errors import DocumentSyntaxError, DuplicateIdError, SchemaError
from .jsonutil import canonical_json

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1


class NodeKind(str, Enum):
    FRAME = "FRAME"
    TEXT = "TEXT"
    VECTOR = "VECTOR"
    RECTANGLE = "RECTANGLE"
    IMAGE = "IMAGE"
    COMPONENT = "COMPONENT"


# Kinds allowed to carry children.
CONTAINER_KINDS = (NodeKind.FRAME, NodeKind.COMPONENT)


@dataclass(frozen=True)
class Color:
    """sRGB-encoded components plus alpha, each in [0, 1]."""

    r: float
    g: float
    b: float
    a: float = 1.0

    def __post_init__(self):
        for name in ("r", "g", "b", "a"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or isinstance(v, bool) or not 0.0 <= float(v) <= 1.0:
                raise SchemaError(f"color component {name!r} must be in [0,1], got {v!r}")
            object.__setattr__(self, name, float(v))

    def to_hex(self) -> str:
        """`#RRGGBB`, or `#RRGGBBAA` when alpha < 1. Round-trips within 1/255."""
        channels = [self.r, self.g, self.b] + ([self.a] if self.a < 1.0 else [])
        return "#" + "".join(f"{round(c * 255):02X}" for c in channels)

    @classmethod
    def from_hex(cls, text: str) -> "Color":
        h = text.strip().lstrip("#")
        if len(h) not in (6, 8) or any(c not in "0123456789abcdefABCDEF" for c in h):
            raise SchemaError(f"invalid hex color: {text!r}")
        parts = [int(h[i : i + 2], 16) / 255.0 for i in range(0, len(h), 2)]
        if len(parts) == 3:
            parts.append(1.0)
        return cls(*parts)


@dataclass(frozen=True)
class Bounds:
    """Document-absolute top-left plus nonnegative extent, in px."""

    x: float
    y: float
    w: float
    h: float

    def __post_init__(self):
        for name in ("x", "y", "w", "h"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if self.w < 0 or self.h < 0:
            raise SchemaError(f"bounds extent must be nonnegative, got w={self.w}, h={self.h}")


@dataclass(frozen=True)
class TextStyle:
    characters: str
    fontSize: float
    fontWeight: int
    fontFamily: str

    def __post_init__(self):
        object.__setattr__(self, "fontSize", float(self.fontSize))
        if self.fontSize <= 0:
            raise SchemaError(f"fontSize must be positive, got {self.fontSize}")
        if not isinstance(self.fontWeight, int) or not 100 <= self.fontWeight <= 1000:
            raise SchemaError(f"fontWeight must be an integer in [100,1000], got {self.fontWeight!r}")


@dataclass(frozen=True)
class Stroke:
    color: Color
    weight: float

    def __post_init__(self):
        object.__setattr__(self, "weight", float(self.weight))


@dataclass(frozen=True)
class DesignNode:
    id: str
    name: str
    kind: NodeKind
    bounds: Bounds
    fills: tuple[Color, ...] = ()
    strokes: tuple[Stroke, ...] = ()
    text: TextStyle | None = None
    children: tuple["DesignNode", ...] = ()

    def __post_init__(self):
        if self.text is not None and self.kind is not NodeKind.TEXT:
            raise SchemaError(f"node {self.id!r}: text properties only allowed on TEXT nodes")
        if self.kind is NodeKind.TEXT and self.text is None:
            raise SchemaError(f"node {self.id!r}: TEXT node requires text properties")
        if self.children and self.kind not in CONTAINER_KINDS:
            raise SchemaError(f"node {self.id!r}: only FRAME/COMPONENT nodes may have children")


@dataclass(frozen=True)
class DesignDocument:
    name: str
    frames: tuple[DesignNode, ...]
    schemaVersion: int = SCHEMA_VERSION

    def __post_init__(self):
        if not self.frames:
            raise SchemaError("document requires at least one frame")
        for frame in self.frames:
            if frame.kind is not NodeKind.FRAME:
                raise SchemaError(f"top-level node {frame.id!r} must be a FRAME, got {frame.kind.value}")
        seen: set[str] = set()
        for node, _ in walk(self):
            if node.id in seen:
                raise DuplicateIdError(node.id)
            seen.add(node.id)


@dataclass(frozen=True)
class DesignContext:
    productGoal: str = ""
    brandKeywords: tuple[str, ...] = ()
    themeColor: Color | None = None
    targetUsers: str = ""


def walk(doc: DesignDocument) -> Iterator[tuple[DesignNode, tuple[str, ...]]]:
    """Depth-first pre-order over all nodes with ancestor id paths, root-first."""

    def visit(node: DesignNode, path: tuple[str, ...]) -> Iterator[tuple[DesignNode, tuple[str, ...]]]:
        yield node, path
        for child in node.children:
            yield from visit(child, path + (node.id,))

    for frame in doc.frames:
        yield from visit(frame, ())


def find_node(doc: DesignDocument, node_id: str) -> DesignNode | None:
    for node, _ in walk(doc):
        if node.id == node_id:
            return node
    return None


def node_index(doc: DesignDocument) -> dict[str, tuple[DesignNode, tuple[str, ...]]]:
    """Map id -> (node, ancestor id path root-first), built in one pass."""
    return {node.id: (node, path) for node, path in walk(doc)}


def parent_chain(doc: DesignDocument, node_id: str) -> list[DesignNode] | None:
    """Ancestors of the node, nearest-first. None when the id is absent."""
    idx = node_index(doc)
    if node_id not in idx:
        return None
    _, path = idx[node_id]
    return [idx[i][0] for i in reversed(path)]


# ---------------------------------------------------------------------------
# Parsing


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise SchemaError(f"{where}: missing required field {key!r}")
    return obj[key]


def _num(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{where}: expected a number, got {type(value).__name__}")
    return float(value)


def _str(value, where: str) -> str:
    if not isinstance(value, str):
        raise SchemaError(f"{where}: expected a string, got {type(value).__name__}")
    return value


def _parse_color(obj, where: str) -> Color:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected a color object")
    return Color(
        _num(_require(obj, "r", where), f"{where}.r"),
        _num(_require(obj, "g", where), f"{where}.g"),
        _num(_require(obj, "b", where), f"{where}.b"),
        _num(_require(obj, "a", where), f"{where}.a"),
    )


def _parse_node(obj, where: str) -> DesignNode:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected a node object")
    node_id = _str(_require(obj, "id", where), f"{where}.id")
    where = f"node {node_id!r}"
    name = _str(_require(obj, "name", where), f"{where}.name")
    kind_raw = _str(_require(obj, "type", where), f"{where}.type")
    try:
        kind = NodeKind(kind_raw)
    except ValueError:
        raise SchemaError(f"{where}: unknown node type {kind_raw!r}") from None

    b = _require(obj, "bounds", where)
    if not isinstance(b, dict):
        raise SchemaError(f"{where}.bounds: expected an object")
    bounds = Bounds(*(_num(_require(b, k, f"{where}.bounds"), f"{where}.bounds.{k}") for k in ("x", "y", "w", "h")))

    fills = []
    for i, f in enumerate(_require(obj, "fills", where) or []):
        if not isinstance(f, dict):
            raise SchemaError(f"{where}.fills[{i}]: expected a fill object")
        ftype = _str(_require(f, "type", f"{where}.fills[{i}]"), f"{where}.fills[{i}].type")
        if ftype != "SOLID":
            log.warning("%s: dropping unsupported fill type %r", where, ftype)
            continue
        fills.append(_parse_color(_require(f, "color", f"{where}.fills[{i}]"), f"{where}.fills[{i}].color"))

    strokes = []
    for i, s in enumerate(_require(obj, "strokes", where) or []):
        if not isinstance(s, dict):
            raise SchemaError(f"{where}.strokes[{i}]: expected a stroke object")
        strokes.append(
            Stroke(
                _parse_color(_require(s, "color", f"{where}.strokes[{i}]"), f"{where}.strokes[{i}].color"),
                _num(_require(s, "weight", f"{where}.strokes[{i}]"), f"{where}.strokes[{i}].weight"),
            )
        )

    text = None
    if "text" in obj and obj["text"] is not None:
        t = obj["text"]
        if not isinstance(t, dict):
            raise SchemaError(f"{where}.text: expected an object")
        weight = _require(t, "fontWeight", f"{where}.text")
        if isinstance(weight, bool) or not isinstance(weight, int):
            raise SchemaError(f"{where}.text.fontWeight: expected an integer")
        text = TextStyle(
            _str(_require(t, "characters", f"{where}.text"), f"{where}.text.characters"),
            _num(_require(t, "fontSize", f"{where}.text"), f"{where}.text.fontSize"),
            weight,
            _str(_require(t, "fontFamily", f"{where}.text"), f"{where}.text.fontFamily"),
        )

    children = tuple(
        _parse_node(c, f"{where}.children[{i}]") for i, c in enumerate(obj.get("children") or [])
    )

    return DesignNode(node_id, name, kind, bounds, tuple(fills), tuple(strokes), text, children)


def parse_document(text: str) -> DesignDocument:
    """Parse interchange-format text into a validated document model."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentSyntaxError(e.msg, e.lineno, e.colno) from None
    if not isinstance(raw, dict):
        raise SchemaError("document: expected a top-level object")
    version = _require(raw, "schemaVersion", "document")
    if version != SCHEMA_VERSION:
        raise SchemaError(f"document: unsupported schemaVersion {version!r}")
    name = _str(_require(raw, "name", "document"), "document.name")
    frames_raw = _require(raw, "frames", "document")
    if not isinstance(frames_raw, list) or not frames_raw:
        raise SchemaError("document: frames must be a nonempty list")
    frames = tuple(_parse_node(f, f"frames[{i}]") for i, f in enumerate(frames_raw))
    return DesignDocument(name=name, frames=frames)


# ---------------------------------------------------------------------------
# Serialization


def _color_dict(c: Color) -> dict:
    return {"r": c.r, "g": c.g, "b": c.b, "a": c.a}


def _node_dict(node: DesignNode) -> dict:
    out: dict = {
        "id": node.id,
        "name": node.name,
        "type": node.kind.value,
        "bounds": {"x": node.bounds.x, "y": node.bounds.y, "w": node.bounds.w, "h": node.bounds.h},
        "fills": [{"type": "SOLID", "color": _color_dict(c)} for c in node.fills],
        "strokes": [{"color": _color_dict(s.color), "weight": s.weight} for s in node.strokes],
    }
    if node.text is not None:
        out["text"] = {
            "characters": node.text.characters,
            "fontSize": node.text.fontSize,
            "fontWeight": node.text.fontWeight,
            "fontFamily": node.text.fontFamily,
        }
    if node.children:
        out["children"] = [_node_dict(c) for c in node.children]
    return out


def document_dict(doc: DesignDocument) -> dict:
    return {
        "schemaVersion": doc.schemaVersion,
        "name": doc.name,
        "frames": [_node_dict(f) for f in doc.frames],
    }


def serialize_document(doc: DesignDocument) -> str:
    """Canonical interchange text: parse(serialize(doc)) == doc, bytes stable."""
    return canonical_json(document_dict(doc))


# ---------------------------------------------------------------------------
# Context file


def parse_context(text: str) -> DesignContext:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentSyntaxError(e.msg, e.lineno, e.colno) from None
    if not isinstance(raw, dict):
        raise SchemaError("context: expected a top-level object")
    return context_from_dict(raw)


def context_from_dict(raw: dict) -> DesignContext:
    keywords = raw.get("brandKeywords") or []
    if not isinstance(keywords, list) or any(not isinstance(k, str) for k in keywords):
        raise SchemaError("context.brandKeywords: expected a list of strings")
    theme = raw.get("themeColor")
    return DesignContext(
        productGoal=_str(raw.get("productGoal", ""), "context.productGoal"),
        brandKeywords=tuple(keywords),
        themeColor=Color.from_hex(theme) if theme else None,
        targetUsers=_str(raw.get("targetUsers", ""), "context.targetUsers"),
    )


def context_dict(ctx: DesignContext) -> dict:
    out: dict = {
        "productGoal": ctx.productGoal,
        "brandKeywords": list(ctx.brandKeywords),
        "targetUsers": ctx.targetUsers,
    }
    if ctx.themeColor is not None:
        out["themeColor"] = ctx.themeColor.to_hex()
    return out
