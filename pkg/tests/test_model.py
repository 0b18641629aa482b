from __future__ import annotations

import json
import random

import pytest

from critiq.errors import DocumentSyntaxError, DuplicateIdError, SchemaError
from critiq.model import (
    Bounds,
    Color,
    DesignContext,
    NodeKind,
    context_dict,
    context_from_dict,
    find_node,
    parse_context,
    parse_document,
    serialize_document,
    walk,
)

from .conftest import fixture_text
from .generators import rand_document

MINIMAL = json.dumps(
    {
        "schemaVersion": 1,
        "name": "Mini",
        "frames": [
            {
                "id": "f1",
                "name": "Home",
                "type": "FRAME",
                "bounds": {"x": 0, "y": 0, "w": 100, "h": 100},
                "fills": [],
                "strokes": [],
                "children": [
                    {
                        "id": "t1",
                        "name": "title",
                        "type": "TEXT",
                        "bounds": {"x": 10, "y": 10, "w": 80, "h": 20},
                        "fills": [{"type": "SOLID", "color": {"r": 0, "g": 0, "b": 0, "a": 1}}],
                        "strokes": [],
                        "text": {"characters": "Hi", "fontSize": 16, "fontWeight": 400, "fontFamily": "Inter"},
                    }
                ],
            }
        ],
    }
)


class TestParse:
    def test_minimal_document(self):
        doc = parse_document(MINIMAL)
        nodes = [n for n, _ in walk(doc)]
        assert [n.id for n in nodes] == ["f1", "t1"]
        assert nodes[1].text.characters == "Hi"

    def test_nested_product_detail_tree(self, checkout_doc):
        # nested frames and leaf kinds survive typed, in order
        frame = checkout_doc.frames[0]
        assert frame.kind is NodeKind.FRAME
        kinds = {n.kind for n, _ in walk(checkout_doc)}
        assert NodeKind.IMAGE in kinds and NodeKind.TEXT in kinds and NodeKind.RECTANGLE in kinds
        row = find_node(checkout_doc, "cart-item-1")
        assert [c.id for c in row.children][:2] == ["cart-item-1-thumb", "cart-item-1-name"]
        assert row.fills[0].to_hex() == "#F9FAFB"

    def test_duplicate_id(self):
        raw = json.loads(MINIMAL)
        raw["frames"][0]["children"].append(dict(raw["frames"][0]["children"][0]))
        with pytest.raises(DuplicateIdError) as exc:
            parse_document(json.dumps(raw))
        assert "t1" in str(exc.value)

    def test_syntax_error_has_position(self):
        with pytest.raises(DocumentSyntaxError) as exc:
            parse_document("{not json")
        assert exc.value.line == 1
        assert exc.value.column is not None

    def test_unknown_kind_named_in_error(self):
        raw = json.loads(MINIMAL)
        raw["frames"][0]["children"][0]["type"] = "BOOLEAN_OPERATION"
        with pytest.raises(SchemaError, match="BOOLEAN_OPERATION"):
            parse_document(json.dumps(raw))

    def test_missing_required_field(self):
        raw = json.loads(MINIMAL)
        del raw["frames"][0]["bounds"]
        with pytest.raises(SchemaError, match="bounds"):
            parse_document(json.dumps(raw))

    def test_unknown_extra_fields_ignored(self):
        raw = json.loads(MINIMAL)
        raw["frames"][0]["layoutMode"] = "VERTICAL"
        raw["exportedBy"] = "plugin"
        doc = parse_document(json.dumps(raw))
        assert doc.frames[0].id == "f1"

    def test_non_solid_fill_dropped(self, caplog):
        raw = json.loads(MINIMAL)
        raw["frames"][0]["fills"] = [
            {"type": "GRADIENT_LINEAR", "stops": []},
            {"type": "SOLID", "color": {"r": 1, "g": 1, "b": 1, "a": 1}},
        ]
        doc = parse_document(json.dumps(raw))
        assert len(doc.frames[0].fills) == 1

    def test_text_on_frame_rejected(self):
        raw = json.loads(MINIMAL)
        raw["frames"][0]["text"] = {"characters": "x", "fontSize": 12, "fontWeight": 400, "fontFamily": "Inter"}
        with pytest.raises(SchemaError):
            parse_document(json.dumps(raw))

    def test_children_on_leaf_rejected(self):
        raw = json.loads(MINIMAL)
        raw["frames"][0]["children"][0]["children"] = [dict(raw["frames"][0]["children"][0], id="t2")]
        with pytest.raises(SchemaError):
            parse_document(json.dumps(raw))

    def test_top_level_must_be_frame(self):
        raw = json.loads(MINIMAL)
        raw["frames"][0]["type"] = "COMPONENT"
        with pytest.raises(SchemaError):
            parse_document(json.dumps(raw))

    def test_empty_frames_rejected(self):
        with pytest.raises(SchemaError):
            parse_document(json.dumps({"schemaVersion": 1, "name": "x", "frames": []}))

    def test_wrong_schema_version(self):
        raw = json.loads(MINIMAL)
        raw["schemaVersion"] = 2
        with pytest.raises(SchemaError):
            parse_document(json.dumps(raw))

    def test_negative_extent_rejected(self):
        raw = json.loads(MINIMAL)
        raw["frames"][0]["bounds"]["w"] = -5
        with pytest.raises(SchemaError):
            parse_document(json.dumps(raw))


class TestSerialize:
    def test_round_trip_model_equality(self, checkout_doc):
        assert parse_document(serialize_document(checkout_doc)) == checkout_doc

    def test_canonical_idempotent_bytes(self, checkout_doc):
        once = serialize_document(checkout_doc)
        twice = serialize_document(parse_document(once))
        assert once == twice

    def test_white_fill_hex_identity(self):
        assert Color(1, 1, 1, 1).to_hex() == "#FFFFFF"

    def test_round_trip_all_fixtures(self):
        for name in ("checkout.json", "checkout_clean.json", "course.json",
                     "course_clean.json", "conflict_pair.json", "conflict_disjoint.json"):
            doc = parse_document(fixture_text(name))
            assert parse_document(serialize_document(doc)) == doc

    def test_round_trip_fuzzed(self):
        rng = random.Random(2024)
        for _ in range(50):
            doc = rand_document(rng)
            text = serialize_document(doc)
            again = parse_document(text)
            assert again == doc
            assert serialize_document(again) == text


class TestColor:
    def test_hex_round_trip_within_one_step(self):
        rng = random.Random(7)
        for _ in range(200):
            c = Color(rng.random(), rng.random(), rng.random(), rng.random())
            back = Color.from_hex(c.to_hex())
            for attr in "rgba":
                assert abs(getattr(c, attr) - getattr(back, attr)) <= 1 / 255 + 1e-9

    def test_component_out_of_range(self):
        with pytest.raises(SchemaError):
            Color(1.2, 0, 0, 1)

    def test_alpha_hex(self):
        assert Color(0, 0, 0, 0.5).to_hex() == "#00000080"
        assert Color.from_hex("#00000080").a == pytest.approx(128 / 255)


class TestTraversal:
    def test_find_present(self, checkout_doc):
        assert find_node(checkout_doc, "ship-terms").name == "terms-note"

    def test_find_absent(self, checkout_doc):
        assert find_node(checkout_doc, "missing-node") is None

    def test_find_deeply_nested(self, checkout_doc):
        assert find_node(checkout_doc, "cart-item-1-sub") is not None

    def test_walk_two_node_order(self):
        doc = parse_document(MINIMAL)
        assert [n.id for n, _ in walk(doc)] == ["f1", "t1"]

    def test_walk_sibling_frames_in_document_order(self, checkout_doc):
        frame_ids = [n.id for n, path in walk(checkout_doc) if not path]
        assert frame_ids == ["frame-cart", "frame-shipping", "frame-payment", "frame-review"]

    def test_walk_grandchild_path(self, checkout_doc):
        paths = {n.id: path for n, path in walk(checkout_doc)}
        assert paths["cart-item-1-sub"] == ("frame-cart", "cart-item-1")

    def test_walk_unique_and_total(self):
        rng = random.Random(99)
        for _ in range(25):
            doc = rand_document(rng)
            seen = [n.id for n, _ in walk(doc)]
            assert len(seen) == len(set(seen))

            def count(node):
                return 1 + sum(count(c) for c in node.children)

            assert len(seen) == sum(count(f) for f in doc.frames)


class TestContext:
    def test_parse_full(self):
        ctx = parse_context(fixture_text("checkout.context.json"))
        assert ctx.themeColor.to_hex() == "#3366FF"
        assert "trustworthy" in ctx.brandKeywords

    def test_all_fields_optional(self):
        ctx = context_from_dict({})
        assert ctx == DesignContext()

    def test_round_trip(self):
        ctx = parse_context(fixture_text("course.context.json"))
        assert context_from_dict(context_dict(ctx)) == ctx

    def test_bad_theme_color(self):
        with pytest.raises(SchemaError):
            context_from_dict({"themeColor": "#12"})
