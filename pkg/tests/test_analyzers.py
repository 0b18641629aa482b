from __future__ import annotations

import json
import random

import pytest

from critiq.analyzers import (
    ALL_RULES,
    RuleConfig,
    RuleId,
    check_contrast,
    check_font_size,
    check_touch_targets,
    contrast_ratio,
    effective_background,
    relative_luminance,
    run_rules,
)
from critiq.feedback import Severity
from critiq.model import Color, DesignContext, find_node, parse_document

from .conftest import fixture_text
from .wcag_oracle import oracle_contrast_8bit, oracle_luminance_8bit


def c8(r, g, b, a=1.0):
    return Color(r / 255, g / 255, b / 255, a)


def make_doc(nodes_json: list, frame_fill=None) -> str:
    frame = {
        "id": "root",
        "name": "Screen",
        "type": "FRAME",
        "bounds": {"x": 0, "y": 0, "w": 400, "h": 800},
        "fills": frame_fill or [],
        "strokes": [],
        "children": nodes_json,
    }
    return json.dumps({"schemaVersion": 1, "name": "T", "frames": [frame]})


def text_node(nid, chars="Hello there", size=16.0, weight=400, color="#000000",
              name=None, family="Inter", x=10, y=10, w=200, h=24, alpha=1.0):
    cc = Color.from_hex(color)
    return {
        "id": nid,
        "name": name or nid,
        "type": "TEXT",
        "bounds": {"x": x, "y": y, "w": w, "h": h},
        "fills": [{"type": "SOLID", "color": {"r": cc.r, "g": cc.g, "b": cc.b, "a": alpha}}],
        "strokes": [],
        "text": {"characters": chars, "fontSize": size, "fontWeight": weight, "fontFamily": family},
    }


SOLID_WHITE = [{"type": "SOLID", "color": {"r": 1, "g": 1, "b": 1, "a": 1}}]


class TestLuminance:
    def test_white(self):
        assert relative_luminance(Color(1, 1, 1)) == pytest.approx(1.0)

    def test_black(self):
        assert relative_luminance(Color(0, 0, 0)) == pytest.approx(0.0)

    def test_pure_red_coefficient(self):
        assert relative_luminance(Color(1, 0, 0)) == pytest.approx(0.2126)

    def test_monotone_per_channel(self):
        base = Color(0.3, 0.5, 0.2)
        for attr in "rgb":
            brighter = Color(**{**{k: getattr(base, k) for k in "rgba"}, attr: 0.8})
            assert relative_luminance(brighter) > relative_luminance(base)


class TestContrastRatio:
    def test_black_on_white_is_21(self):
        assert contrast_ratio(Color(0, 0, 0), Color(1, 1, 1)) == pytest.approx(21.0)

    def test_identical_is_1(self):
        c = c8(90, 120, 30)
        assert contrast_ratio(c, c) == pytest.approx(1.0)

    def test_767676_on_white(self):
        # frozen from the independent table-based oracle: 4.542225
        assert contrast_ratio(c8(0x76, 0x76, 0x76), Color(1, 1, 1)) == pytest.approx(4.542225, abs=1e-3)

    def test_symmetry_and_range_sampled(self):
        rng = random.Random(4096)
        for _ in range(4096):
            a = c8(rng.randrange(256), rng.randrange(256), rng.randrange(256))
            b = c8(rng.randrange(256), rng.randrange(256), rng.randrange(256))
            r1 = contrast_ratio(a, b)
            assert r1 == pytest.approx(contrast_ratio(b, a))
            assert 1.0 <= r1 <= 21.0 + 1e-9

    def test_darkening_darker_fg_never_decreases_ratio(self):
        bg = Color(1, 1, 1)
        fg = c8(0x90, 0x70, 0x50)
        prev = contrast_ratio(fg, bg)
        for step in range(1, 21):
            scale = 1 - step / 20
            darker = Color(fg.r * scale, fg.g * scale, fg.b * scale)
            cur = contrast_ratio(darker, bg)
            assert cur >= prev - 1e-12
            prev = cur


class TestEffectiveBackground:
    def test_nearest_ancestor_wins(self):
        inner = {
            "id": "inner", "name": "inner", "type": "FRAME",
            "bounds": {"x": 0, "y": 0, "w": 100, "h": 100},
            "fills": SOLID_WHITE, "strokes": [],
            "children": [text_node("t", color="#333333")],
        }
        doc = parse_document(make_doc([inner], frame_fill=[
            {"type": "SOLID", "color": {"r": 0.05, "g": 0.05, "b": 0.05, "a": 1}}]))
        bg = effective_background(doc, find_node(doc, "t"))
        assert bg.to_hex() == "#FFFFFF"

    def test_default_white_when_unfilled(self):
        doc = parse_document(make_doc([text_node("t")]))
        assert effective_background(doc, find_node(doc, "t")).to_hex() == "#FFFFFF"

    def test_half_black_over_white_composites_mid_gray(self):
        # frozen from the compositing oracle: 0.5 black over white -> 128/255
        inner = {
            "id": "inner", "name": "inner", "type": "FRAME",
            "bounds": {"x": 0, "y": 0, "w": 100, "h": 100},
            "fills": [{"type": "SOLID", "color": {"r": 0, "g": 0, "b": 0, "a": 0.5}}],
            "strokes": [],
            "children": [text_node("t")],
        }
        doc = parse_document(make_doc([inner], frame_fill=SOLID_WHITE))
        bg = effective_background(doc, find_node(doc, "t"))
        assert bg.to_hex() == "#808080"


class TestCheckContrast:
    def test_gray_16px_on_white_critical(self, empty_context):
        doc = parse_document(make_doc([text_node("t", color="#9AA0A6")], frame_fill=SOLID_WHITE))
        findings = check_contrast(doc, empty_context)
        assert len(findings) == 1
        f = findings[0]
        assert f.threshold == 4.5
        assert f.severity is Severity.CRITICAL
        # frozen oracle value for (#9AA0A6, #FFFFFF): 2.640526
        assert f.measured["ratio"] == pytest.approx(2.64, abs=0.01)

    def test_large_text_lower_threshold(self, empty_context):
        # 3.06 on white: fails 4.5 at 16px but passes 3:1 at 24px
        doc = parse_document(make_doc([text_node("t", color="#8A94A6", size=24)], frame_fill=SOLID_WHITE))
        assert check_contrast(doc, empty_context) == []

    def test_bold_large_cutoff(self, empty_context):
        doc = parse_document(make_doc(
            [text_node("t", color="#8A94A6", size=19, weight=700)], frame_fill=SOLID_WHITE))
        assert check_contrast(doc, empty_context) == []

    def test_black_on_white_clean(self, empty_context):
        doc = parse_document(make_doc([text_node("t", color="#000000")], frame_fill=SOLID_WHITE))
        assert check_contrast(doc, empty_context) == []

    def test_translucent_text_composited_first(self, empty_context):
        # 55% black over white ~ #737373: 4.74 vs white passes; 45% fails
        doc = parse_document(make_doc([text_node("t", color="#000000", alpha=0.45)], frame_fill=SOLID_WHITE))
        assert len(check_contrast(doc, empty_context)) == 1
        doc2 = parse_document(make_doc([text_node("t", color="#000000", alpha=0.55)], frame_fill=SOLID_WHITE))
        assert check_contrast(doc2, empty_context) == []

    def test_strict_mode_uses_aaa(self, empty_context):
        # 4.83 on white: AA-clean, AAA(7:1)-dirty
        doc = parse_document(make_doc([text_node("t", color="#6B7280")], frame_fill=SOLID_WHITE))
        assert check_contrast(doc, empty_context) == []
        strict = RuleConfig(strictContrast=True)
        findings = check_contrast(doc, empty_context, strict)
        assert len(findings) == 1 and findings[0].threshold == 7.0


class TestCheckTouchTargets:
    def test_small_button_frame(self):
        button = {
            "id": "btn", "name": "cta", "type": "FRAME",
            "bounds": {"x": 0, "y": 0, "w": 40, "h": 40},
            "fills": [], "strokes": [],
            "children": [text_node("lbl", chars="Go", w=30, h=16)],
        }
        doc = parse_document(make_doc([button]))
        findings = check_touch_targets(doc)
        assert [f.nodeId for f in findings] == ["btn"]
        assert findings[0].measured == {"w": 40, "h": 40}
        assert findings[0].threshold == 44

    def test_exactly_44_passes(self):
        button = {
            "id": "btn", "name": "cta", "type": "FRAME",
            "bounds": {"x": 0, "y": 0, "w": 44, "h": 44},
            "fills": [], "strokes": [],
            "children": [text_node("lbl", chars="Go", w=30, h=16)],
        }
        doc = parse_document(make_doc([button]))
        assert check_touch_targets(doc) == []

    def test_labeled_bar_flagged_on_height(self):
        bar = {
            "id": "bar", "name": "filter-bar", "type": "FRAME",
            "bounds": {"x": 0, "y": 0, "w": 120, "h": 24},
            "fills": [], "strokes": [],
            "children": [text_node("bar-text", chars="All", w=40, h=16)],
        }
        doc = parse_document(make_doc([bar]))
        findings = check_touch_targets(doc)
        assert len(findings) == 1 and "height" in findings[0].message

    def test_cta_named_node_without_text(self):
        icon = {
            "id": "ic", "name": "buy icon", "type": "VECTOR",
            "bounds": {"x": 0, "y": 0, "w": 24, "h": 24}, "fills": [], "strokes": [],
        }
        doc = parse_document(make_doc([icon]))
        assert [f.nodeId for f in check_touch_targets(doc)] == ["ic"]


class TestCheckFontSize:
    def test_12px_body(self):
        doc = parse_document(make_doc([text_node("t", size=12)]))
        findings = check_font_size(doc)
        assert len(findings) == 1
        assert findings[0].severity is Severity.MEDIUM
        assert findings[0].measured["fontSize"] == 12

    def test_16px_boundary_clean(self):
        doc = parse_document(make_doc([text_node("t", size=16)]))
        assert check_font_size(doc) == []

    def test_caption_exemption(self):
        doc = parse_document(make_doc([text_node("t", size=10, name="caption-price")]))
        assert check_font_size(doc) == []


class TestRunRules:
    def test_empty_rule_set(self, checkout_doc, checkout_context):
        assert run_rules(checkout_doc, checkout_context, rules=()) == []

    def test_clean_fixture_all_rules(self, checkout_clean_doc, checkout_context):
        assert run_rules(checkout_clean_doc, checkout_context, ALL_RULES) == []

    def test_seeded_fixture_matches_oracle_list(self, checkout_doc, checkout_context):
        seeds = json.loads(fixture_text("checkout.seeds"))["seeds"]
        expected = {(s["nodeId"], s["kind"]) for s in seeds if s["kind"].isupper()}
        findings = run_rules(checkout_doc, checkout_context, ALL_RULES)
        assert {(f.nodeId, f.rule.value) for f in findings} == expected

    def test_deterministic_output(self, course_doc, course_context):
        a = run_rules(course_doc, course_context, ALL_RULES)
        b = run_rules(course_doc, course_context, ALL_RULES)
        assert a == b
        # fixed rule order, walk order within each rule
        rule_sequence = [f.rule for f in a]
        assert rule_sequence == sorted(rule_sequence, key=list(RuleId).index)

    def test_boundary_values_produce_no_findings(self, empty_context):
        nodes = [
            text_node("t-ratio", color="#767676"),  # 4.54 >= 4.5
            text_node("t-size", size=16),
        ]
        button = {
            "id": "btn", "name": "cta", "type": "FRAME",
            "bounds": {"x": 0, "y": 200, "w": 44, "h": 44},
            "fills": [], "strokes": [],
            "children": [text_node("lbl", chars="Go", y=210, w=30, h=16)],
        }
        doc = parse_document(make_doc(nodes + [button], frame_fill=SOLID_WHITE))
        findings = run_rules(doc, empty_context, ALL_RULES)
        assert findings == []


class TestAgainstOracle:
    def test_luminance_matches_oracle(self):
        rng = random.Random(11)
        for _ in range(100):
            r, g, b = rng.randrange(256), rng.randrange(256), rng.randrange(256)
            assert relative_luminance(c8(r, g, b)) == pytest.approx(
                oracle_luminance_8bit(r, g, b), abs=1e-9)

    def test_contrast_matches_oracle(self):
        rng = random.Random(12)
        for _ in range(100):
            p1 = (rng.randrange(256), rng.randrange(256), rng.randrange(256))
            p2 = (rng.randrange(256), rng.randrange(256), rng.randrange(256))
            assert contrast_ratio(c8(*p1), c8(*p2)) == pytest.approx(
                oracle_contrast_8bit(p1, p2), abs=1e-6)
