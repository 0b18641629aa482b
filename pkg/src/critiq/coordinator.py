"""Synthesize role feedback into a prioritized critique agenda.

The coordinator groups issues by UI component, orders them by a total
order (severity, then category rank, then component, then issue id),
and surfaces cross-role conflicts as open questions. It frames
trade-offs; it never resolves them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import DanglingNodeError
from .feedback import ROLE_DISPLAY, Issue, Role, RoleFeedback, Severity
from .model import DesignContext, DesignDocument, NodeKind, node_index
from .schemas import AGENDA_SCHEMA, validate


class Category(Enum):
    ACCESSIBILITY = 0
    CORE_FLOW = 1
    BUSINESS = 2
    TECH_DEBT = 3
    AESTHETIC = 4

    @property
    def rank(self) -> int:
        return self.value

    @property
    def label(self) -> str:
        return _CATEGORY_LABELS[self]


_CATEGORY_LABELS = {
    Category.ACCESSIBILITY: "Accessibility",
    Category.CORE_FLOW: "Core Flow",
    Category.BUSINESS: "Business",
    Category.TECH_DEBT: "Tech Debt",
    Category.AESTHETIC: "Aesthetic",
}

# Rule-backed issue types map exactly; free-form remote tags fall through
# to the keyword table, then default to AESTHETIC.
_RULE_CATEGORY = {
    "contrast_text": Category.ACCESSIBILITY,
    "touch_target": Category.ACCESSIBILITY,
    "font_size": Category.ACCESSIBILITY,
    "placeholder_text": Category.CORE_FLOW,
    "cta_copy_length": Category.CORE_FLOW,
    "brand_color_unused": Category.BUSINESS,
    "nonstandard_font": Category.TECH_DEBT,
    "node_budget": Category.TECH_DEBT,
    "oversized_image": Category.TECH_DEBT,
}

_KEYWORD_CATEGORY = [
    (("accessib", "contrast", "a11y", "wcag"), Category.ACCESSIBILITY),
    (("usability", "navigation", "flow", "content", "copy", "task"), Category.CORE_FLOW),
    (("business", "brand", "market", "conversion", "kpi"), Category.BUSINESS),
    (("feasib", "performance", "tech", "debt", "implement", "cost"), Category.TECH_DEBT),
]


def categorize(issue_type: str) -> Category:
    tag = issue_type.lower()
    if tag in _RULE_CATEGORY:
        return _RULE_CATEGORY[tag]
    for keywords, category in _KEYWORD_CATEGORY:
        if any(k in tag for k in keywords):
            return category
    return Category.AESTHETIC


@dataclass(frozen=True)
class Conflict:
    conflictingRoles: frozenset[Role]
    nodeId: str
    property: str
    conflictDescription: str
    tradeoffQuestion: str


@dataclass
class AgendaItem:
    priority: Severity
    title: str
    componentGroup: str
    affectedRoles: frozenset[Role]
    issueIds: list[str]
    issueSummary: str
    recommendation: str
    conflicts: list[Conflict] = field(default_factory=list)
    estimatedEffort: str = "medium"
    category: Category = Category.AESTHETIC  # internal sort key, not on the wire


@dataclass
class CritiqueAgenda:
    conversationalOpening: str
    overallScore: int
    items: list[AgendaItem]
    conflictsToSurface: list[Conflict]
    positiveHighlights: list[str]
    nextConversationPoints: list[str]


SCORE_WEIGHTS = {Severity.CRITICAL: 2.0, Severity.HIGH: 1.0, Severity.MEDIUM: 0.5, Severity.LOW: 0.25}


def _all_issues(feedbacks: list[RoleFeedback]) -> list[Issue]:
    return [issue for fb in feedbacks for issue in fb.issues]


def component_group(doc_idx: dict, node_id: str, issue_id: str = "") -> str:
    """Name of the nearest named FRAME ancestor; the node itself counts when
    it is a named frame, and an unframed node falls back to its own name."""
    if node_id not in doc_idx:
        raise DanglingNodeError(node_id, issue_id)
    node, path = doc_idx[node_id]
    chain = [node] + [doc_idx[i][0] for i in reversed(path)]
    for candidate in chain:
        if candidate.kind is NodeKind.FRAME and candidate.name:
            return candidate.name
    return node.name


def thematize(feedbacks: list[RoleFeedback], doc: DesignDocument) -> list[AgendaItem]:
    """Merge issues sharing (component group, category) into agenda items."""
    idx = node_index(doc)
    groups: dict[tuple[str, Category], list[Issue]] = {}
    order: list[tuple[str, Category]] = []
    for issue in _all_issues(feedbacks):
        key = (component_group(idx, issue.nodeId, issue.issueId), categorize(issue.issueType))
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append(issue)

    items = []
    for group_name, category in order:
        issues = groups[(group_name, category)]
        top = max(issues, key=lambda i: i.severity.rank)
        items.append(
            AgendaItem(
                priority=top.severity,
                title=f"{category.label} — {group_name}",
                componentGroup=group_name,
                affectedRoles=frozenset(i.sourceRole for i in issues),
                issueIds=[i.issueId for i in issues],
                issueSummary=_summarize(issues),
                recommendation=_recommend(issues),
                conflicts=[],
                estimatedEffort=_estimate_effort(issues),
                category=category,
            )
        )
    return items


def _summarize(issues: list[Issue]) -> str:
    if len(issues) == 1:
        return issues[0].description
    names = sorted({i.nodeName for i in issues})
    return f"{len(issues)} related issues on {', '.join(names)}. " + issues[0].description


def _recommend(issues: list[Issue]) -> str:
    top = max(issues, key=lambda i: i.severity.rank)
    rec = top.remediation.action
    if top.remediation.specificSuggestion:
        rec = f"{rec}: {top.remediation.specificSuggestion}"
    if len(issues) > 1:
        rec += f" ({len(issues) - 1} related fix(es) in this group.)"
    return rec


def _estimate_effort(issues: list[Issue]) -> str:
    if all(i.proposedPatch is not None for i in issues):
        return "low"
    if any(i.proposedPatch is None and i.severity.at_least(Severity.HIGH) for i in issues):
        return "high"
    return "medium"


def prioritize(items: list[AgendaItem]) -> list[AgendaItem]:
    """Total order: severity desc, category rank asc, component, smallest issue id."""
    return sorted(
        items,
        key=lambda it: (
            -it.priority.rank,
            it.category.rank,
            it.componentGroup,
            min(it.issueIds),
        ),
    )


def _category_from_title(title: str) -> Category:
    label = title.split(" — ")[0]
    for category in Category:
        if category.label == label:
            return category
    return Category.AESTHETIC


def detect_conflicts(feedbacks: list[RoleFeedback]) -> list[Conflict]:
    """Cross-role disagreements: colliding patch targets, or the brand-vs-contrast pairing."""
    issues = _all_issues(feedbacks)
    conflicts: dict[tuple, Conflict] = {}

    # The brand-vs-contrast pairing first: when both detectors hit one node,
    # its record should frame the accessibility/brand trade-off rather than
    # the generic patch collision below.
    for i, a in enumerate(issues):
        for b in issues[i + 1 :]:
            if a.nodeId != b.nodeId or a.sourceRole == b.sourceRole:
                continue
            pair = {a.issueType, b.issueType}
            brandish = any("brand" in t for t in pair)
            contrastish = any("contrast" in t for t in pair)
            if not (brandish and contrastish):
                continue
            key = (frozenset({a.sourceRole, b.sourceRole}), a.nodeId, "fill")
            conflicts.setdefault(
                key,
                Conflict(
                    conflictingRoles=key[0],
                    nodeId=a.nodeId,
                    property="fill",
                    conflictDescription=(
                        f"Brand visibility and contrast compliance pull the color of "
                        f"{a.nodeName!r} in different directions."
                    ),
                    tradeoffQuestion=(
                        f"How might we balance accessibility standards with brand "
                        f"consistency on {a.nodeName!r}?"
                    ),
                ),
            )

    # Patches from different roles targeting the same (node, property) with
    # unequal values.
    for i, a in enumerate(issues):
        if a.proposedPatch is None:
            continue
        for b in issues[i + 1 :]:
            if b.proposedPatch is None or a.sourceRole == b.sourceRole:
                continue
            for op_a in a.proposedPatch.ops:
                for op_b in b.proposedPatch.ops:
                    if op_a.nodeId != op_b.nodeId or op_a.property_name != op_b.property_name:
                        continue
                    if op_a == op_b:
                        continue
                    key = (frozenset({a.sourceRole, b.sourceRole}), op_a.nodeId, op_a.property_name)
                    conflicts.setdefault(
                        key,
                        Conflict(
                            conflictingRoles=key[0],
                            nodeId=op_a.nodeId,
                            property=op_a.property_name,
                            conflictDescription=(
                                f"{ROLE_DISPLAY[a.sourceRole]} and {ROLE_DISPLAY[b.sourceRole]} propose "
                                f"different values for {op_a.property_name} on {a.nodeName!r}."
                            ),
                            tradeoffQuestion=(
                                f"How might we reconcile {ROLE_DISPLAY[a.sourceRole]}'s and "
                                f"{ROLE_DISPLAY[b.sourceRole]}'s intents for {op_a.property_name} "
                                f"on {a.nodeName!r}?"
                            ),
                        ),
                    )

    # canonical order makes the result independent of input permutation
    return sorted(
        conflicts.values(),
        key=lambda c: (c.nodeId, c.property, sorted(r.value for r in c.conflictingRoles)),
    )


def overall_score(feedbacks: list[RoleFeedback]) -> int:
    deduction = sum(SCORE_WEIGHTS[i.severity] for i in _all_issues(feedbacks))
    raw = 10.0 - deduction
    rounded = int(raw + 0.5) if raw >= 0 else -int(-raw + 0.5)  # half away from zero
    return max(1, min(10, rounded))


def compose_agenda(
    feedbacks: list[RoleFeedback],
    doc: DesignDocument,
    context: DesignContext,
) -> CritiqueAgenda:
    items = prioritize(thematize(feedbacks, doc))
    conflicts = detect_conflicts(feedbacks)
    issue_nodes = {i.issueId: i.nodeId for i in _all_issues(feedbacks)}
    for item in items:
        nodes = {issue_nodes[iid] for iid in item.issueIds}
        item.conflicts = [c for c in conflicts if c.nodeId in nodes]
    score = overall_score(feedbacks)
    agenda = CritiqueAgenda(
        conversationalOpening=_opening(doc, items, score),
        overallScore=score,
        items=items,
        conflictsToSurface=conflicts,
        positiveHighlights=_highlights(feedbacks, doc),
        nextConversationPoints=_next_points(items, conflicts),
    )
    return agenda


def _opening(doc: DesignDocument, items: list[AgendaItem], score: int) -> str:
    if not items:
        return (
            f"We reviewed {doc.name!r} together and found nothing blocking — "
            f"a clean pass across all three perspectives."
        )
    return (
        f"We reviewed {doc.name!r} across user experience, product vision, and "
        f"engineering. The team sees {len(items)} theme(s) worth discussing, "
        f"starting with {items[0].title}."
    )


def _highlights(feedbacks: list[RoleFeedback], doc: DesignDocument) -> list[str]:
    quiet = [ROLE_DISPLAY[fb.sourceRole] for fb in feedbacks if not fb.issues]
    out = [f"{name} review found nothing to flag." for name in quiet]
    if not out:
        fewest = min(feedbacks, key=lambda fb: len(fb.issues))
        out.append(
            f"{ROLE_DISPLAY[fewest.sourceRole]} raised the fewest concerns "
            f"({len(fewest.issues)}); that area is in good shape."
        )
    return out


def _next_points(items: list[AgendaItem], conflicts: list[Conflict]) -> list[str]:
    points = [c.tradeoffQuestion for c in conflicts[:2]]
    for item in items[:2]:
        points.append(f"Walk through {item.title} ({len(item.issueIds)} issue(s)).")
    if not points:
        points.append("Anything specific you would like a deeper pass on?")
    return points


# ---------------------------------------------------------------------------
# Wire format (coordinator schema, snake_case)


def conflict_dict(c: Conflict) -> dict:
    return {
        "conflicting_roles": sorted(r.value for r in c.conflictingRoles),
        "node_id": c.nodeId,
        "property": c.property,
        "conflict_description": c.conflictDescription,
        "tradeoff_question": c.tradeoffQuestion,
    }


def agenda_item_dict(item: AgendaItem) -> dict:
    return {
        "priority": item.priority.value,
        "title": item.title,
        "component_group": item.componentGroup,
        "affected_roles": sorted(r.value for r in item.affectedRoles),
        "issue_ids": list(item.issueIds),
        "issue_summary": item.issueSummary,
        "recommendation": item.recommendation,
        "conflicts": [conflict_dict(c) for c in item.conflicts],
        "estimated_effort": item.estimatedEffort,
    }


def agenda_dict(agenda: CritiqueAgenda) -> dict:
    payload = {
        "conversational_opening": agenda.conversationalOpening,
        "overall_score": agenda.overallScore,
        "agenda_items": [agenda_item_dict(i) for i in agenda.items],
        "conflicts_to_surface": [conflict_dict(c) for c in agenda.conflictsToSurface],
        "positive_highlights": list(agenda.positiveHighlights),
        "next_conversation_points": list(agenda.nextConversationPoints),
    }
    validate(payload, AGENDA_SCHEMA, "critique agenda")
    return payload


def conflict_from_dict(raw: dict) -> Conflict:
    return Conflict(
        conflictingRoles=frozenset(Role(r) for r in raw["conflicting_roles"]),
        nodeId=raw["node_id"],
        property=raw["property"],
        conflictDescription=raw["conflict_description"],
        tradeoffQuestion=raw["tradeoff_question"],
    )


def agenda_from_dict(raw: dict) -> CritiqueAgenda:
    items = [
        AgendaItem(
            priority=Severity(i["priority"]),
            title=i["title"],
            componentGroup=i["component_group"],
            affectedRoles=frozenset(Role(r) for r in i["affected_roles"]),
            issueIds=list(i["issue_ids"]),
            issueSummary=i["issue_summary"],
            recommendation=i["recommendation"],
            conflicts=[conflict_from_dict(c) for c in i["conflicts"]],
            estimatedEffort=i["estimated_effort"],
            category=_category_from_title(i["title"]),
        )
        for i in raw["agenda_items"]
    ]
    return CritiqueAgenda(
        conversationalOpening=raw["conversational_opening"],
        overallScore=raw["overall_score"],
        items=items,
        conflictsToSurface=[conflict_from_dict(c) for c in raw["conflicts_to_surface"]],
        positiveHighlights=list(raw["positive_highlights"]),
        nextConversationPoints=list(raw["next_conversation_points"]),
    )
