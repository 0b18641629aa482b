"""Run the expert panel over a document via a pluggable critique provider."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from importlib import resources

from .errors import PanelError, ProviderError, SchemaViolation
from .feedback import PANEL_ROLES, ROLE_INITIALS, CritiqueMode, Role, RoleFeedback, feedback_from_dict
from .jsonutil import canonical_json
from .model import DesignContext, DesignDocument, context_dict, serialize_document
from .providers import ProviderRequest
from .schemas import ROLE_FEEDBACK_SCHEMA, validate

PROMPT_VERSION = "v1"

# At most this many role requests in flight per panel run.
PANEL_CONCURRENCY = 3

_TEMPLATE_FILES = {
    Role.USER_EXPERIENCE: "user_experience.txt",
    Role.PRODUCT_VISION: "product_vision.txt",
    Role.ENGINEERING: "engineering.txt",
    Role.COORDINATOR: "coordinator.txt",
}

_UNIFIED_PREAMBLE = """# Role & Objective
As a comprehensive design expert, evaluate the design across user experience,
product vision, and engineering feasibility in a single review, and provide
specific, actionable recommendations covering all three lenses.

# Inputs
1) UI JSON (structured node tree with bounds, fills, text properties)
2) Product context:
   - Product goal: {product_goal}
   - Brand keywords: {brand_keywords}
   - Theme color: {theme_color}
   - Target users: {target_users}

# Output Format (JSON)
Emit the standard feedback JSON with "source_role": "unified" and issues drawn
from every scope section below.
"""

_UNIFIED_RULES = """# Execution Rules
- Each issue must include nodeId and name the affected perspective in its rationale.
- When data is missing, provide conservative, general suggestions and ensure valid JSON output.
"""


def _load_template(role: Role) -> str:
    name = _TEMPLATE_FILES[role]
    return (resources.files("critiq") / "prompts" / PROMPT_VERSION / name).read_text(encoding="utf-8")


def _context_values(context: DesignContext) -> dict:
    return {
        "product_goal": context.productGoal or "not provided",
        "brand_keywords": ", ".join(context.brandKeywords) or "not provided",
        "theme_color": context.themeColor.to_hex() if context.themeColor else "not provided",
        "target_users": context.targetUsers or "not provided",
    }


def _scope_section(template: str) -> str:
    start = template.index("# Analysis Scope")
    rest = template[start:]
    end = rest.find("\n# ", 1)
    return rest[:end].rstrip() if end != -1 else rest.rstrip()


def render_role_prompt(role: Role, context: DesignContext) -> str:
    """Instantiate the role's prompt template with the session context."""
    if role is Role.COORDINATOR:
        raise ValueError("the coordinator is not a panel role; its synthesis runs locally")
    values = _context_values(context)
    if role is Role.UNIFIED:
        scopes = []
        for sub in PANEL_ROLES:
            section = _scope_section(_load_template(sub))
            label = {"user_experience": "User Experience", "product_vision": "Product Vision", "engineering": "Engineering"}[sub.value]
            scopes.append(section.replace("# Analysis Scope", f"# Analysis Scope ({label})", 1))
        return (_UNIFIED_PREAMBLE.format(**values) + "\n" + "\n\n".join(scopes) + "\n\n" + _UNIFIED_RULES)
    return _load_template(role).format(**values)


def _ensure_unique_issue_ids(fb: RoleFeedback) -> RoleFeedback:
    """Reassign colliding or blank ids with role-scoped sequence numbers."""
    seen: set[str] = set()
    seq = 0
    issues = []
    for issue in fb.issues:
        issue_id = issue.issueId
        while not issue_id or issue_id in seen:
            seq += 1
            issue_id = f"{ROLE_INITIALS[fb.sourceRole]}-{seq:03d}"
        if issue_id != issue.issueId:
            issue = replace(issue, issueId=issue_id)
        seen.add(issue_id)
        issues.append(issue)
    return replace(fb, issues=tuple(issues))


def critique(
    role: Role,
    doc: DesignDocument,
    context: DesignContext,
    provider,
    history: tuple[tuple[str, str], ...] = (),
) -> RoleFeedback:
    """One role's schema-valid feedback; invalid provider output gets one repair retry."""
    if role not in (Role.USER_EXPERIENCE, Role.PRODUCT_VISION, Role.ENGINEERING, Role.UNIFIED):
        raise ValueError(f"{role.value} cannot produce role feedback")
    request = ProviderRequest(
        role=role,
        prompt=render_role_prompt(role, context),
        document_json=serialize_document(doc),
        context_json=canonical_json(context_dict(context)),
        history=history,
    )
    payload, error = _validated_payload(provider.complete(request), role)
    if payload is None:
        # one structured-repair retry, then reject
        repair = ProviderRequest(
            role=request.role,
            prompt=request.prompt,
            document_json=request.document_json,
            context_json=request.context_json,
            history=request.history,
            repair_error=error,
        )
        payload, error = _validated_payload(provider.complete(repair), role)
        if payload is None:
            raise SchemaViolation(f"{role.value} output invalid after repair retry: {error}")
    return _ensure_unique_issue_ids(feedback_from_dict(payload))


def _validated_payload(response, role: Role) -> tuple[dict | None, str | None]:
    payload = response.payload
    if payload is None:
        return None, "output is not a JSON object"
    try:
        validate(payload, ROLE_FEEDBACK_SCHEMA, f"{role.value} feedback")
    except SchemaViolation as e:
        return None, str(e)
    if payload.get("source_role") != role.value:
        return None, f"source_role must be {role.value!r}, got {payload.get('source_role')!r}"
    return payload, None


def run_panel(
    doc: DesignDocument,
    context: DesignContext,
    mode: CritiqueMode,
    provider,
) -> list[RoleFeedback]:
    """Run the panel concurrently; results are merge-ordered, never scheduling-ordered."""
    roles = list(PANEL_ROLES) if mode is CritiqueMode.MULTI_PERSPECTIVE else [Role.UNIFIED]
    succeeded: dict[Role, RoleFeedback] = {}
    failed: dict[Role, Exception] = {}
    with ThreadPoolExecutor(max_workers=PANEL_CONCURRENCY) as pool:
        futures = {role: pool.submit(critique, role, doc, context, provider) for role in roles}
        for role, future in futures.items():
            try:
                succeeded[role] = future.result()
            except (ProviderError, SchemaViolation) as e:
                failed[role] = e
    if failed:
        raise PanelError(succeeded, failed)
    return [succeeded[role] for role in roles]
