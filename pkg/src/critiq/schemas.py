"""JSON Schemas for wire payloads, enforced at the provider and HTTP edges."""

from __future__ import annotations

import jsonschema

from .errors import SchemaViolation

SEVERITY_VALUES = ["critical", "high", "medium", "low"]
ROLE_VALUES = ["user_experience", "product_vision", "engineering", "unified", "coordinator"]
NODE_TYPE_VALUES = ["FRAME", "TEXT", "VECTOR", "RECTANGLE", "IMAGE", "COMPONENT"]

COLOR_SCHEMA = {
    "type": "object",
    "properties": {k: {"type": "number", "minimum": 0, "maximum": 1} for k in "rgba"},
    "required": ["r", "g", "b", "a"],
}

PATCH_OP_SCHEMA = {
    "type": "object",
    "properties": {
        "op": {"enum": ["setSolidFill", "setFontSize", "setText", "setBounds"]},
        "nodeId": {"type": "string"},
        "fillIndex": {"type": "integer", "minimum": 0},
        "color": COLOR_SCHEMA,
        "fontSize": {"type": "number", "exclusiveMinimum": 0},
        "characters": {"type": "string"},
        "bounds": {
            "type": "object",
            "properties": {k: {"type": "number"} for k in "xywh"},
            "required": ["x", "y", "w", "h"],
        },
    },
    "required": ["op", "nodeId"],
}

PATCH_SCHEMA = {
    "type": "object",
    "properties": {
        "patchId": {"type": "string"},
        "label": {"type": "string"},
        "ops": {"type": "array", "items": PATCH_OP_SCHEMA, "minItems": 1},
        "origin": {"type": "string"},
    },
    "required": ["patchId", "label", "ops"],
}

ISSUE_SCHEMA = {
    "type": "object",
    "properties": {
        "issueId": {"type": "string", "minLength": 1},
        "sourceRole": {"enum": ROLE_VALUES[:4]},
        "nodeId": {"type": "string", "minLength": 1},
        "nodeName": {"type": "string"},
        "elementType": {"enum": NODE_TYPE_VALUES},
        "issueType": {"type": "string"},
        "severity": {"enum": SEVERITY_VALUES},
        "description": {"type": "string"},
        "rationale": {"type": "string"},
        "remediation": {
            "type": "object",
            "properties": {
                "action": {"type": "string"},
                "specificSuggestion": {"type": "string"},
                "technicalSolution": {"type": "string"},
            },
            "required": ["action", "specificSuggestion", "technicalSolution"],
        },
        "proposedPatch": PATCH_SCHEMA,
    },
    "required": [
        "issueId",
        "sourceRole",
        "nodeId",
        "nodeName",
        "elementType",
        "issueType",
        "severity",
        "description",
        "remediation",
    ],
}

ROLE_FEEDBACK_SCHEMA = {
    "type": "object",
    "properties": {
        "feedback_id": {"type": "string", "minLength": 1},
        "source_role": {"enum": ROLE_VALUES[:4]},
        "issues": {"type": "array", "items": ISSUE_SCHEMA},
        "summary": {"type": "string"},
        "priority": {"enum": SEVERITY_VALUES},
        "detailed_analysis": {"type": "string"},
    },
    "required": ["feedback_id", "source_role", "issues", "summary", "priority", "detailed_analysis"],
}

CONFLICT_SCHEMA = {
    "type": "object",
    "properties": {
        "conflicting_roles": {
            "type": "array",
            "items": {"enum": ROLE_VALUES},
            "minItems": 2,
            "uniqueItems": True,
        },
        "node_id": {"type": "string"},
        "property": {"type": "string"},
        "conflict_description": {"type": "string"},
        "tradeoff_question": {"type": "string", "pattern": "\\?$"},
    },
    "required": ["conflicting_roles", "node_id", "property", "conflict_description", "tradeoff_question"],
}

AGENDA_ITEM_SCHEMA = {
    "type": "object",
    "properties": {
        "priority": {"enum": SEVERITY_VALUES},
        "title": {"type": "string"},
        "component_group": {"type": "string"},
        "affected_roles": {"type": "array", "items": {"enum": ROLE_VALUES}, "minItems": 1},
        "issue_ids": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "issue_summary": {"type": "string"},
        "recommendation": {"type": "string"},
        "conflicts": {"type": "array", "items": CONFLICT_SCHEMA},
        "estimated_effort": {"enum": ["low", "medium", "high"]},
    },
    "required": [
        "priority",
        "title",
        "component_group",
        "affected_roles",
        "issue_ids",
        "issue_summary",
        "recommendation",
        "conflicts",
        "estimated_effort",
    ],
}

AGENDA_SCHEMA = {
    "type": "object",
    "properties": {
        "conversational_opening": {"type": "string"},
        "overall_score": {"type": "integer", "minimum": 1, "maximum": 10},
        "agenda_items": {"type": "array", "items": AGENDA_ITEM_SCHEMA},
        "conflicts_to_surface": {"type": "array", "items": CONFLICT_SCHEMA},
        "positive_highlights": {"type": "array", "items": {"type": "string"}},
        "next_conversation_points": {"type": "array", "items": {"type": "string"}},
    },
    "required": [
        "conversational_opening",
        "overall_score",
        "agenda_items",
        "conflicts_to_surface",
        "positive_highlights",
        "next_conversation_points",
    ],
}

COVERAGE_SCHEMA = {
    "type": "object",
    "properties": {
        "method": {"type": "string"},
        "mode": {"type": "string"},
        "matched": {"type": "integer", "minimum": 0},
        "total": {"type": "integer", "minimum": 0},
        "coverage": {"type": ["number", "null"], "minimum": 0, "maximum": 1},
        "per_role": {"type": "object"},
        "unmatched_seed_ids": {"type": "array", "items": {"type": "string"}},
        "extra_issue_ids": {"type": "array", "items": {"type": "string"}},
    },
    "required": ["method", "mode", "matched", "total", "coverage", "unmatched_seed_ids", "extra_issue_ids"],
}

REPORT_SCHEMA = {
    "type": "object",
    "properties": {
        "tool": {"const": "critiq"},
        "version": {"type": "string"},
        "mode": {"type": "string"},
        "issues": {"type": "array", "items": ISSUE_SCHEMA},
        "agenda": AGENDA_SCHEMA,
        "coverage": {"anyOf": [COVERAGE_SCHEMA, {"type": "null"}]},
    },
    "required": ["tool", "version", "mode", "issues", "agenda"],
}

CHAT_TURN_SCHEMA = {
    "type": "object",
    "properties": {
        "author": {"type": "string"},
        "text": {"type": "string"},
    },
    "required": ["author", "text"],
}


def validate(payload: dict, schema: dict, what: str) -> None:
    """Raise SchemaViolation with a readable path when validation fails."""
    try:
        jsonschema.validate(payload, schema)
    except jsonschema.ValidationError as e:
        path = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise SchemaViolation(f"{what} failed validation at {path}: {e.message}") from None
