"""Roles, severities, and the structured critique records they emit."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import SchemaViolation
from .model import NodeKind
from .patches import Patch, patch_dict, patch_from_dict


class Role(str, Enum):
    USER_EXPERIENCE = "user_experience"
    PRODUCT_VISION = "product_vision"
    ENGINEERING = "engineering"
    UNIFIED = "unified"
    COORDINATOR = "coordinator"


PANEL_ROLES = (Role.USER_EXPERIENCE, Role.PRODUCT_VISION, Role.ENGINEERING)

ROLE_INITIALS = {
    Role.USER_EXPERIENCE: "UX",
    Role.PRODUCT_VISION: "PV",
    Role.ENGINEERING: "ENG",
    Role.UNIFIED: "UNI",
    Role.COORDINATOR: "CO",
}

ROLE_DISPLAY = {
    Role.USER_EXPERIENCE: "User Experience",
    Role.PRODUCT_VISION: "Product Vision",
    Role.ENGINEERING: "Engineering",
    Role.UNIFIED: "Design Expert",
    Role.COORDINATOR: "Lead Coordinator",
}


class Severity(str, Enum):
    CRITICAL = "critical"
    HIGH = "high"
    MEDIUM = "medium"
    LOW = "low"

    @property
    def rank(self) -> int:
        """Higher is more severe: LOW=0 .. CRITICAL=3."""
        return _SEVERITY_RANK[self]

    def at_least(self, other: "Severity") -> bool:
        return self.rank >= other.rank


_SEVERITY_RANK = {Severity.LOW: 0, Severity.MEDIUM: 1, Severity.HIGH: 2, Severity.CRITICAL: 3}


class CritiqueMode(str, Enum):
    MULTI_PERSPECTIVE = "multi"
    UNIFIED = "unified"


@dataclass(frozen=True)
class Remediation:
    action: str = ""
    specificSuggestion: str = ""
    technicalSolution: str = ""


@dataclass(frozen=True)
class Issue:
    issueId: str
    sourceRole: Role
    nodeId: str
    nodeName: str
    elementType: NodeKind
    issueType: str
    severity: Severity
    description: str
    rationale: str = ""
    remediation: Remediation = field(default_factory=Remediation)
    proposedPatch: Patch | None = None


@dataclass(frozen=True)
class RoleFeedback:
    feedbackId: str
    sourceRole: Role
    issues: tuple[Issue, ...]
    summary: str
    detailedAnalysis: str = ""

    @property
    def priority(self) -> Severity:
        """The role's own top severity; LOW when the issue list is empty."""
        if not self.issues:
            return Severity.LOW
        return max((i.severity for i in self.issues), key=lambda s: s.rank)


# ---------------------------------------------------------------------------
# Wire format. Issue objects keep their camelCase keys; feedback-level
# keys are snake_case, matching the role output contract.


def issue_dict(issue: Issue) -> dict:
    out: dict = {
        "issueId": issue.issueId,
        "sourceRole": issue.sourceRole.value,
        "nodeId": issue.nodeId,
        "nodeName": issue.nodeName,
        "elementType": issue.elementType.value,
        "issueType": issue.issueType,
        "severity": issue.severity.value,
        "description": issue.description,
        "rationale": issue.rationale,
        "remediation": {
            "action": issue.remediation.action,
            "specificSuggestion": issue.remediation.specificSuggestion,
            "technicalSolution": issue.remediation.technicalSolution,
        },
    }
    if issue.proposedPatch is not None:
        out["proposedPatch"] = patch_dict(issue.proposedPatch)
    return out


def feedback_dict(fb: RoleFeedback) -> dict:
    return {
        "feedback_id": fb.feedbackId,
        "source_role": fb.sourceRole.value,
        "issues": [issue_dict(i) for i in fb.issues],
        "summary": fb.summary,
        "priority": fb.priority.value,
        "detailed_analysis": fb.detailedAnalysis,
    }


def issue_from_dict(raw: dict) -> Issue:
    try:
        rem = raw.get("remediation") or {}
        return Issue(
            issueId=raw["issueId"],
            sourceRole=Role(raw["sourceRole"]),
            nodeId=raw["nodeId"],
            nodeName=raw["nodeName"],
            elementType=NodeKind(raw["elementType"]),
            issueType=raw["issueType"],
            severity=Severity(raw["severity"]),
            description=raw["description"],
            rationale=raw.get("rationale", ""),
            remediation=Remediation(
                action=rem.get("action", ""),
                specificSuggestion=rem.get("specificSuggestion", ""),
                technicalSolution=rem.get("technicalSolution", ""),
            ),
            proposedPatch=patch_from_dict(raw["proposedPatch"]) if raw.get("proposedPatch") else None,
        )
    except (KeyError, ValueError, TypeError) as e:
        raise SchemaViolation(f"malformed issue record: {e}") from None


def feedback_from_dict(raw: dict) -> RoleFeedback:
    try:
        return RoleFeedback(
            feedbackId=raw["feedback_id"],
            sourceRole=Role(raw["source_role"]),
            issues=tuple(issue_from_dict(i) for i in raw["issues"]),
            summary=raw["summary"],
            detailedAnalysis=raw.get("detailed_analysis", ""),
        )
    except (KeyError, ValueError, TypeError) as e:
        raise SchemaViolation(f"malformed feedback record: {e}") from None
