"""Batch evaluation: seeded-issue corpora, coverage scoring, mode comparison.

Coverage here is detector coverage: the fraction of seeded defects the
pipeline reports. That is not the same thing as how many issues a person
would resolve with the tool in hand, and every report says so in its
method header.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .analyzers import RuleId
from .coordinator import CritiqueAgenda, agenda_dict
from .errors import SchemaError
from .feedback import CritiqueMode, Issue, issue_dict
from .model import DesignContext, DesignDocument, find_node, parse_document
from .perspectives import run_panel

COVERAGE_METHOD = (
    "automated detector coverage: fraction of seeded defects reported by the "
    "pipeline (not a measure of human issue resolution)"
)

_RULE_NAMES = {r.value for r in RuleId}


@dataclass(frozen=True)
class Seed:
    seedId: str
    nodeId: str
    kind: str  # a RuleId name, or a free tag for issues only a model would find
    description: str = ""

    @property
    def is_rule_seed(self) -> bool:
        return self.kind in _RULE_NAMES


@dataclass(frozen=True)
class SeededCorpus:
    document: DesignDocument
    seeds: tuple[Seed, ...]

    def __post_init__(self):
        seen = set()
        for seed in self.seeds:
            if seed.seedId in seen:
                raise SchemaError(f"duplicate seedId {seed.seedId!r}")
            seen.add(seed.seedId)
            if find_node(self.document, seed.nodeId) is None:
                raise SchemaError(f"seed {seed.seedId} references unknown node {seed.nodeId!r}")

    def rule_seeds(self) -> list[Seed]:
        return [s for s in self.seeds if s.is_rule_seed]


def load_corpus(document_path: str | Path, seeds_path: str | Path | None = None) -> SeededCorpus:
    """Load a corpus: the document file plus its sidecar .seeds file."""
    document_path = Path(document_path)
    if seeds_path is None:
        seeds_path = document_path.with_suffix(".seeds")
    doc = parse_document(document_path.read_text(encoding="utf-8"))
    raw = json.loads(Path(seeds_path).read_text(encoding="utf-8"))
    seeds = tuple(
        Seed(
            seedId=s["seedId"],
            nodeId=s["nodeId"],
            kind=s["kind"],
            description=s.get("description", ""),
        )
        for s in raw["seeds"]
    )
    return SeededCorpus(document=doc, seeds=seeds)


@dataclass
class CoverageReport:
    mode: str
    matched: int
    total: int
    coverage: float | None
    perRole: dict[str, int] = field(default_factory=dict)
    unmatchedSeedIds: list[str] = field(default_factory=list)
    extraIssueIds: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "method": COVERAGE_METHOD,
            "mode": self.mode,
            "matched": self.matched,
            "total": self.total,
            "coverage": self.coverage,
            "per_role": dict(self.perRole),
            "unmatched_seed_ids": list(self.unmatchedSeedIds),
            "extra_issue_ids": list(self.extraIssueIds),
        }


def _seed_matches(seed: Seed, issue: Issue) -> bool:
    if issue.nodeId != seed.nodeId:
        return False
    if seed.is_rule_seed:
        return issue.issueType == seed.kind.lower()
    tag = seed.kind.lower()
    hay = issue.issueType.lower()
    return tag == hay or tag in hay or hay in tag


def score(detected: list[Issue], corpus: SeededCorpus, mode: str = "") -> CoverageReport:
    """Greedy matching in seed order; each detected issue pays for at most one seed."""
    consumed: set[str] = set()
    matched = 0
    per_role: dict[str, int] = {}
    unmatched: list[str] = []
    for seed in corpus.seeds:
        hit = next(
            (i for i in detected if i.issueId not in consumed and _seed_matches(seed, i)), None
        )
        if hit is None:
            unmatched.append(seed.seedId)
            continue
        consumed.add(hit.issueId)
        matched += 1
        per_role[hit.sourceRole.value] = per_role.get(hit.sourceRole.value, 0) + 1
    total = len(corpus.seeds)
    return CoverageReport(
        mode=mode,
        matched=matched,
        total=total,
        coverage=(matched / total) if total else None,
        perRole=per_role,
        unmatchedSeedIds=unmatched,
        extraIssueIds=[i.issueId for i in detected if i.issueId not in consumed],
    )


def compare_modes(corpus: SeededCorpus, context: DesignContext, provider) -> tuple[CoverageReport, CoverageReport]:
    """Score both panel modes on identical inputs."""
    reports = []
    for mode in (CritiqueMode.MULTI_PERSPECTIVE, CritiqueMode.UNIFIED):
        feedbacks = run_panel(corpus.document, context, mode, provider)
        issues = [i for fb in feedbacks for i in fb.issues]
        reports.append(score(issues, corpus, mode=mode.value))
    return reports[0], reports[1]


def comparison_dict(multi: CoverageReport, unified: CoverageReport) -> dict:
    delta = None
    if multi.coverage is not None and unified.coverage is not None:
        delta = multi.coverage - unified.coverage
    return {
        "multi": multi.to_dict(),
        "unified": unified.to_dict(),
        "delta": {"matched": multi.matched - unified.matched, "coverage": delta},
    }


def build_report(
    mode: CritiqueMode | str,
    issues: list[Issue],
    agenda: CritiqueAgenda,
    coverage: CoverageReport | None = None,
) -> dict:
    mode_value = mode.value if isinstance(mode, CritiqueMode) else str(mode)
    report = {
        "tool": "critiq",
        "version": __version__,
        "mode": mode_value,
        "issues": [issue_dict(i) for i in issues],
        "agenda": agenda_dict(agenda),
    }
    if coverage is not None:
        report["coverage"] = coverage.to_dict()
    return report
