from __future__ import annotations

import json
import random

import pytest

from critiq.feedback import CritiqueMode, Issue, NodeKind, Remediation, Role, Severity
from critiq.harness import (
    COVERAGE_METHOD,
    Seed,
    SeededCorpus,
    build_report,
    compare_modes,
    comparison_dict,
    load_corpus,
    score,
)
from critiq.model import parse_document
from critiq.perspectives import run_panel
from critiq.schemas import COVERAGE_SCHEMA, REPORT_SCHEMA, validate

from .conftest import FIXTURES, fixture_text
from .generators import rand_document
from .matching_oracle import max_matching


def mk_detected(issue_id, node_id, issue_type, role=Role.USER_EXPERIENCE):
    return Issue(
        issueId=issue_id, sourceRole=role, nodeId=node_id, nodeName=node_id,
        elementType=NodeKind.TEXT, issueType=issue_type, severity=Severity.MEDIUM,
        description="d", remediation=Remediation())


@pytest.fixture(scope="module")
def tiny_corpus():
    doc = parse_document(fixture_text("conflict_disjoint.json"))
    seeds = (
        Seed("A", "welcome-copy", "CONTRAST_TEXT"),
        Seed("B", "buy-label", "BRAND_COLOR_UNUSED"),
        Seed("C", "welcome-copy", "FONT_SIZE"),
        Seed("D", "frame-home", "navigation"),
    )
    return SeededCorpus(document=doc, seeds=seeds)


class TestScore:
    def test_half_coverage(self, tiny_corpus):
        detected = [
            mk_detected("UX-1", "welcome-copy", "contrast_text"),
            mk_detected("PV-1", "buy-label", "brand_color_unused", role=Role.PRODUCT_VISION),
        ]
        report = score(detected, tiny_corpus)
        assert (report.matched, report.total) == (2, 4)
        assert report.coverage == 0.5
        assert report.unmatchedSeedIds == ["C", "D"]
        assert report.extraIssueIds == []

    def test_empty_detected(self, tiny_corpus):
        report = score([], tiny_corpus)
        assert report.matched == 0 and report.coverage == 0.0
        assert report.unmatchedSeedIds == ["A", "B", "C", "D"]

    def test_detected_issue_pays_for_one_seed(self, tiny_corpus):
        detected = [mk_detected("UX-1", "welcome-copy", "contrast_text")]
        duplicated = SeededCorpus(
            document=tiny_corpus.document,
            seeds=(Seed("A", "welcome-copy", "CONTRAST_TEXT"), Seed("A2", "welcome-copy", "CONTRAST_TEXT")),
        )
        report = score(detected, duplicated)
        assert report.matched == 1
        assert report.unmatchedSeedIds == ["A2"]

    def test_free_tag_keyword_match(self, tiny_corpus):
        detected = [mk_detected("R-1", "frame-home", "navigation_flow")]
        report = score(detected, tiny_corpus)
        assert "D" not in report.unmatchedSeedIds

    def test_zero_seed_corpus(self):
        doc = parse_document(fixture_text("conflict_disjoint.json"))
        corpus = SeededCorpus(document=doc, seeds=())
        report = score([mk_detected("X", "welcome-copy", "contrast_text")], corpus)
        assert report.total == 0 and report.coverage is None
        validate(report.to_dict(), COVERAGE_SCHEMA, "coverage")

    def test_full_rule_run_covers_rule_detectable_subset(self, checkout_doc, checkout_context, provider):
        corpus = load_corpus(FIXTURES / "checkout.json")
        feedbacks = run_panel(checkout_doc, checkout_context, CritiqueMode.MULTI_PERSPECTIVE, provider)
        issues = [i for fb in feedbacks for i in fb.issues]
        report = score(issues, corpus)
        rule_seed_ids = {s.seedId for s in corpus.rule_seeds()}
        assert set(report.unmatchedSeedIds).isdisjoint(rule_seed_ids)
        assert report.matched == len(rule_seed_ids)
        assert report.extraIssueIds == []

    def test_greedy_equals_exhaustive_on_small_corpora(self):
        rng = random.Random(1234)
        kinds = ["CONTRAST_TEXT", "TOUCH_TARGET", "FONT_SIZE", "PLACEHOLDER_TEXT", "alpha", "beta"]
        for _ in range(30):
            doc = rand_document(rng)
            from critiq.model import walk

            node_ids = [n.id for n, _ in walk(doc)]
            seeds = tuple(
                Seed(f"S{k}", rng.choice(node_ids), rng.choice(kinds))
                for k in range(rng.randint(0, 8))
            )
            try:
                corpus = SeededCorpus(document=doc, seeds=seeds)
            except Exception:
                continue
            detected = [
                mk_detected(f"I{j}", rng.choice(node_ids), rng.choice([k.lower() for k in kinds]))
                for j in range(rng.randint(0, 10))
            ]
            from critiq.harness import _seed_matches

            got = score(detected, corpus).matched
            want = max_matching(list(corpus.seeds), detected, _seed_matches)
            assert got == want


class TestCompareModes:
    def test_deterministic_delta_zero(self, checkout_context, provider):
        corpus = load_corpus(FIXTURES / "checkout.json")
        multi, unified = compare_modes(corpus, checkout_context, provider)
        assert multi.matched == unified.matched
        assert multi.coverage == unified.coverage
        payload = comparison_dict(multi, unified)
        assert payload["delta"] == {"matched": 0, "coverage": 0.0}

    def test_method_header_present(self, checkout_context, provider):
        corpus = load_corpus(FIXTURES / "course.json")
        multi, _ = compare_modes(corpus, checkout_context, provider)
        assert "detector coverage" in COVERAGE_METHOD
        assert multi.to_dict()["method"] == COVERAGE_METHOD


class TestCorpusLoading:
    def test_sidecar_seeds(self):
        corpus = load_corpus(FIXTURES / "checkout.json")
        assert len(corpus.seeds) == 16
        assert len(corpus.rule_seeds()) == 11

    def test_dangling_seed_rejected(self):
        doc = parse_document(fixture_text("conflict_disjoint.json"))
        with pytest.raises(Exception):
            SeededCorpus(document=doc, seeds=(Seed("S", "ghost", "CONTRAST_TEXT"),))


class TestReport:
    def test_report_schema(self, checkout_doc, checkout_context, provider):
        from critiq.coordinator import compose_agenda

        feedbacks = run_panel(checkout_doc, checkout_context, CritiqueMode.MULTI_PERSPECTIVE, provider)
        issues = [i for fb in feedbacks for i in fb.issues]
        agenda = compose_agenda(feedbacks, checkout_doc, checkout_context)
        corpus = load_corpus(FIXTURES / "checkout.json")
        report = build_report(CritiqueMode.MULTI_PERSPECTIVE, issues, agenda, score(issues, corpus))
        validate(report, REPORT_SCHEMA, "report")
        assert report["coverage"]["method"] == COVERAGE_METHOD
