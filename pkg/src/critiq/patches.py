"""Reversible document edits: patch ops, atomic application, inverses.

Documents are immutable values, so applying a patch produces a new
document plus an inverse patch recorded from the pre-application state.
Failed patches never leave a partially edited document behind.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

from .errors import EmptyHistory, InvalidOp
from .model import Bounds, Color, DesignDocument, DesignNode, NodeKind, find_node


@dataclass(frozen=True)
class SetSolidFill:
    nodeId: str
    fillIndex: int
    color: Color

    property_name = "fill"


@dataclass(frozen=True)
class SetFontSize:
    nodeId: str
    fontSize: float

    property_name = "fontSize"


@dataclass(frozen=True)
class SetText:
    nodeId: str
    characters: str

    property_name = "text"


@dataclass(frozen=True)
class SetBounds:
    nodeId: str
    bounds: Bounds

    property_name = "bounds"


PatchOp = SetSolidFill | SetFontSize | SetText | SetBounds


@dataclass(frozen=True)
class Patch:
    patchId: str
    label: str
    ops: tuple[PatchOp, ...]
    origin: str = ""

    def __post_init__(self):
        if not self.ops:
            raise InvalidOp("patch requires at least one op")


def _rewrite_node(doc: DesignDocument, node_id: str, fn: Callable[[DesignNode], DesignNode]) -> DesignDocument:
    found = False

    def visit(node: DesignNode) -> DesignNode:
        nonlocal found
        if node.id == node_id:
            found = True
            return fn(node)
        if not node.children:
            return node
        new_children = tuple(visit(c) for c in node.children)
        if all(a is b for a, b in zip(new_children, node.children)):
            return node
        return replace(node, children=new_children)

    frames = tuple(visit(f) for f in doc.frames)
    if not found:
        raise InvalidOp(f"op targets unknown node {node_id!r}")
    return replace(doc, frames=frames)


def _apply_op(doc: DesignDocument, op: PatchOp) -> tuple[DesignDocument, PatchOp]:
    """Apply one op, returning (new document, inverse op)."""
    node = find_node(doc, op.nodeId)
    if node is None:
        raise InvalidOp(f"op targets unknown node {op.nodeId!r}")

    if isinstance(op, SetSolidFill):
        if not 0 <= op.fillIndex < len(node.fills):
            raise InvalidOp(f"node {op.nodeId!r} has no fill index {op.fillIndex}")
        inverse = SetSolidFill(op.nodeId, op.fillIndex, node.fills[op.fillIndex])
        new_fills = node.fills[: op.fillIndex] + (op.color,) + node.fills[op.fillIndex + 1 :]
        return _rewrite_node(doc, op.nodeId, lambda n: replace(n, fills=new_fills)), inverse

    if isinstance(op, SetFontSize):
        if node.kind is not NodeKind.TEXT or node.text is None:
            raise InvalidOp(f"setFontSize requires a TEXT node, {op.nodeId!r} is {node.kind.value}")
        if op.fontSize <= 0:
            raise InvalidOp(f"fontSize must be positive, got {op.fontSize}")
        inverse = SetFontSize(op.nodeId, node.text.fontSize)
        new_text = replace(node.text, fontSize=float(op.fontSize))
        return _rewrite_node(doc, op.nodeId, lambda n: replace(n, text=new_text)), inverse

    if isinstance(op, SetText):
        if node.kind is not NodeKind.TEXT or node.text is None:
            raise InvalidOp(f"setText requires a TEXT node, {op.nodeId!r} is {node.kind.value}")
        inverse = SetText(op.nodeId, node.text.characters)
        new_text = replace(node.text, characters=op.characters)
        return _rewrite_node(doc, op.nodeId, lambda n: replace(n, text=new_text)), inverse

    if isinstance(op, SetBounds):
        inverse = SetBounds(op.nodeId, node.bounds)
        return _rewrite_node(doc, op.nodeId, lambda n: replace(n, bounds=op.bounds)), inverse

    raise InvalidOp(f"unknown op {op!r}")


def apply_patch(doc: DesignDocument, patch: Patch) -> tuple[DesignDocument, Patch]:
    """Apply all ops in order; atomic. Returns (new doc, inverse patch).

    The inverse patch's ops are in reverse order so applying it restores
    the input document exactly.
    """
    current = doc
    inverses: list[PatchOp] = []
    for op in patch.ops:
        # value semantics make failure atomic: `doc` is never touched
        current, inverse = _apply_op(current, op)
        inverses.append(inverse)
    inverse_patch = Patch(
        patchId=f"{patch.patchId}~undo",
        label=f"Undo {patch.label}",
        ops=tuple(reversed(inverses)),
        origin=patch.origin,
    )
    return current, inverse_patch


def preview_patch(doc: DesignDocument, patch: Patch) -> DesignDocument:
    """Same result document as apply_patch, with nothing recorded."""
    new_doc, _ = apply_patch(doc, patch)
    return new_doc


class History:
    """Linear per-session undo stack of (patch, inverse) pairs."""

    def __init__(self, entries: list[tuple[Patch, Patch]] | None = None):
        self._entries: list[tuple[Patch, Patch]] = list(entries or [])

    def push(self, patch: Patch, inverse: Patch) -> None:
        self._entries.append((patch, inverse))

    def pop(self) -> tuple[Patch, Patch]:
        if not self._entries:
            raise EmptyHistory("nothing to undo")
        return self._entries.pop()

    def entries(self) -> list[tuple[Patch, Patch]]:
        return list(self._entries)

    def __len__(self) -> int:
        return len(self._entries)


# ---------------------------------------------------------------------------
# Wire format: {"patchId","label","ops":[{"op":...}],"origin"?}

_OP_NAMES = {
    SetSolidFill: "setSolidFill",
    SetFontSize: "setFontSize",
    SetText: "setText",
    SetBounds: "setBounds",
}


def op_dict(op: PatchOp) -> dict:
    out: dict = {"op": _OP_NAMES[type(op)], "nodeId": op.nodeId}
    if isinstance(op, SetSolidFill):
        out["fillIndex"] = op.fillIndex
        out["color"] = {"r": op.color.r, "g": op.color.g, "b": op.color.b, "a": op.color.a}
    elif isinstance(op, SetFontSize):
        out["fontSize"] = op.fontSize
    elif isinstance(op, SetText):
        out["characters"] = op.characters
    elif isinstance(op, SetBounds):
        out["bounds"] = {"x": op.bounds.x, "y": op.bounds.y, "w": op.bounds.w, "h": op.bounds.h}
    return out


def op_from_dict(raw: dict) -> PatchOp:
    try:
        name = raw["op"]
        node_id = raw["nodeId"]
        if name == "setSolidFill":
            c = raw["color"]
            return SetSolidFill(node_id, int(raw["fillIndex"]), Color(c["r"], c["g"], c["b"], c.get("a", 1.0)))
        if name == "setFontSize":
            return SetFontSize(node_id, float(raw["fontSize"]))
        if name == "setText":
            return SetText(node_id, raw["characters"])
        if name == "setBounds":
            b = raw["bounds"]
            return SetBounds(node_id, Bounds(b["x"], b["y"], b["w"], b["h"]))
    except (KeyError, TypeError) as e:
        raise InvalidOp(f"malformed op record: {e}") from None
    raise InvalidOp(f"unknown op name {raw.get('op')!r}")


def patch_dict(patch: Patch) -> dict:
    out = {"patchId": patch.patchId, "label": patch.label, "ops": [op_dict(o) for o in patch.ops]}
    if patch.origin:
        out["origin"] = patch.origin
    return out


def patch_from_dict(raw: dict) -> Patch:
    try:
        ops = tuple(op_from_dict(o) for o in raw["ops"])
        return Patch(patchId=raw["patchId"], label=raw.get("label", ""), ops=ops, origin=raw.get("origin", ""))
    except (KeyError, TypeError) as e:
        raise InvalidOp(f"malformed patch record: {e}") from None
