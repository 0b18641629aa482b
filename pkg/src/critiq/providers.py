"""Critique providers: a deterministic rule-backed stub and a remote client.

Both speak the same contract: a request carrying the role prompt plus the
serialized document/context, and a response whose structured payload must
validate as role feedback. The deterministic provider works purely from
the serialized inputs, exactly like a remote model would, which keeps the
offline path honest about the wire format.
"""

from __future__ import annotations

import json
import os
import urllib.error
import urllib.request
from dataclasses import dataclass, replace

from .analyzers import (
    DEFAULT_CONFIG,
    Finding,
    RuleConfig,
    RuleId,
    run_rules,
)
from .errors import ProviderError, Unfixable
from .feedback import (
    ROLE_INITIALS,
    Issue,
    Remediation,
    Role,
    RoleFeedback,
    feedback_dict,
)
from .model import DesignContext, DesignDocument, find_node, parse_context, parse_document
from .patches import Patch
from .remediation import suggest_fixes

DEFAULT_TIMEOUT_MS = 30000

# Which rules each role owns; the unified expert takes the union.
ROLE_RULES: dict[Role, tuple[RuleId, ...]] = {
    Role.USER_EXPERIENCE: (RuleId.CONTRAST_TEXT, RuleId.TOUCH_TARGET, RuleId.FONT_SIZE),
    Role.PRODUCT_VISION: (RuleId.BRAND_COLOR_UNUSED, RuleId.PLACEHOLDER_TEXT, RuleId.CTA_COPY_LENGTH),
    Role.ENGINEERING: (RuleId.NONSTANDARD_FONT, RuleId.NODE_BUDGET, RuleId.OVERSIZED_IMAGE),
    Role.UNIFIED: tuple(RuleId),
}

_RATIONALE = {
    RuleId.CONTRAST_TEXT: "Low-contrast text excludes users with reduced vision and strains everyone in bright conditions.",
    RuleId.TOUCH_TARGET: "Small targets cause mis-taps, especially one-handed or for users with motor impairments.",
    RuleId.FONT_SIZE: "Undersized body text forces zooming and raises reading effort on mobile screens.",
    RuleId.BRAND_COLOR_UNUSED: "A screen without the brand color weakens recognition and visual identity.",
    RuleId.PLACEHOLDER_TEXT: "Placeholder copy shipping to production erodes user trust and looks unfinished.",
    RuleId.CTA_COPY_LENGTH: "Long call-to-action labels dilute the action and hurt conversion.",
    RuleId.NONSTANDARD_FONT: "Fonts outside the supported set add load weight and licensing/maintenance cost.",
    RuleId.NODE_BUDGET: "Very deep layer trees slow rendering and make the screen costly to maintain.",
    RuleId.OVERSIZED_IMAGE: "Oversized images inflate page weight and delay first meaningful paint.",
}

_ACTION = {
    RuleId.CONTRAST_TEXT: "Increase text contrast",
    RuleId.TOUCH_TARGET: "Enlarge the touch target",
    RuleId.FONT_SIZE: "Raise the font size",
    RuleId.BRAND_COLOR_UNUSED: "Apply the theme color",
    RuleId.PLACEHOLDER_TEXT: "Replace placeholder copy",
    RuleId.CTA_COPY_LENGTH: "Shorten the call to action",
    RuleId.NONSTANDARD_FONT: "Switch to a supported font",
    RuleId.NODE_BUDGET: "Flatten or split the frame",
    RuleId.OVERSIZED_IMAGE: "Resize or compress the image",
}


@dataclass(frozen=True)
class ProviderRequest:
    role: Role
    prompt: str
    document_json: str
    context_json: str
    history: tuple[tuple[str, str], ...] = ()
    repair_error: str | None = None


@dataclass(frozen=True)
class ProviderResponse:
    raw_text: str
    payload: dict | None = None


class DeterministicProvider:
    """Offline provider backed by the rule checks; output is reproducible."""

    def __init__(self, config: RuleConfig = DEFAULT_CONFIG):
        self.config = config

    def complete(self, request: ProviderRequest) -> ProviderResponse:
        doc = parse_document(request.document_json)
        context = parse_context(request.context_json)
        fb = self.feedback_for(request.role, doc, context)
        raw = json.dumps(feedback_dict(fb))
        return ProviderResponse(raw_text=raw, payload=json.loads(raw))

    def feedback_for(self, role: Role, doc: DesignDocument, context: DesignContext) -> RoleFeedback:
        rules = ROLE_RULES[role]
        findings = run_rules(doc, context, rules, self.config)
        issues = tuple(self._issue_from_finding(role, f, doc, context) for f in findings)
        return RoleFeedback(
            feedbackId=f"{ROLE_INITIALS[role]}-{doc.name}",
            sourceRole=role,
            issues=issues,
            summary=self._summary(role, issues, doc),
            detailedAnalysis=self._analysis(role, findings, doc),
        )

    def _issue_from_finding(
        self, role: Role, finding: Finding, doc: DesignDocument, context: DesignContext
    ) -> Issue:
        node = find_node(doc, finding.nodeId)
        issue_id = f"{ROLE_INITIALS[role]}-{finding.nodeId}-{finding.rule.value}"
        issue = Issue(
            issueId=issue_id,
            sourceRole=role,
            nodeId=finding.nodeId,
            nodeName=node.name,
            elementType=node.kind,
            issueType=finding.rule.value.lower(),
            severity=finding.severity,
            description=finding.message,
            rationale=_RATIONALE[finding.rule],
            remediation=Remediation(
                action=_ACTION[finding.rule],
                specificSuggestion=finding.message,
                technicalSolution=self._technical(finding),
            ),
        )
        patch = self._proposed_patch(issue, doc, context)
        if patch is not None:
            issue = replace(issue, proposedPatch=patch)
        return issue

    def _proposed_patch(self, issue: Issue, doc: DesignDocument, context: DesignContext) -> Patch | None:
        try:
            options = suggest_fixes(issue, doc, context, self.config)
        except Unfixable:
            return None
        if not options:
            return None
        best = options[0].patch
        return Patch(patchId=f"{issue.issueId}~fix", label=best.label, ops=best.ops, origin=issue.issueId)

    @staticmethod
    def _technical(finding: Finding) -> str:
        if finding.rule is RuleId.CONTRAST_TEXT:
            return f"Set the text fill to a color meeting {finding.threshold}:1 against {finding.measured['background']}."
        if finding.rule is RuleId.TOUCH_TARGET:
            return "Set min-width/min-height to 44px on the interactive element."
        if finding.rule is RuleId.FONT_SIZE:
            return "Set font-size to 16px or more."
        if finding.rule is RuleId.BRAND_COLOR_UNUSED:
            return f"Use {finding.measured['themeColor']} on a primary action or accent."
        if finding.rule is RuleId.PLACEHOLDER_TEXT:
            return "Replace the characters with final copy."
        if finding.rule is RuleId.CTA_COPY_LENGTH:
            return "Rewrite the label with a short verb phrase."
        if finding.rule is RuleId.NONSTANDARD_FONT:
            return "Map the text style to a font from the supported set."
        if finding.rule is RuleId.NODE_BUDGET:
            return "Extract repeated groups into components and merge decorative layers."
        return "Export the asset at display resolution and enable lazy loading."

    @staticmethod
    def _summary(role: Role, issues: tuple[Issue, ...], doc: DesignDocument) -> str:
        if not issues:
            return f"Reviewed {doc.name!r}: no issues from this perspective."
        worst = max((i.severity for i in issues), key=lambda s: s.rank)
        return f"Reviewed {doc.name!r}: {len(issues)} issue(s), worst severity {worst.value}."

    @staticmethod
    def _analysis(role: Role, findings: list[Finding], doc: DesignDocument) -> str:
        if not findings:
            return "All checks in this perspective's scope passed."
        by_rule: dict[str, int] = {}
        for f in findings:
            by_rule[f.rule.value] = by_rule.get(f.rule.value, 0) + 1
        parts = ", ".join(f"{rule}: {n}" for rule, n in sorted(by_rule.items()))
        return f"Findings by check: {parts}."


class RemoteProvider:
    """Chat-completions style HTTP client; model and endpoint are configurable."""

    def __init__(
        self,
        base_url: str,
        model: str,
        api_key: str = "",
        timeout_ms: int = DEFAULT_TIMEOUT_MS,
    ):
        self.base_url = base_url.rstrip("/")
        self.model = model
        self.api_key = api_key
        self.timeout_ms = timeout_ms

    def complete(self, request: ProviderRequest) -> ProviderResponse:
        messages = [{"role": "system", "content": request.prompt}]
        for author, text in request.history:
            messages.append({"role": "user", "content": f"[{author}] {text}"})
        messages.append(
            {
                "role": "user",
                "content": (
                    "UI JSON:\n" + request.document_json + "\n\nProduct context:\n" + request.context_json
                    + "\n\nRespond with the JSON output format only."
                ),
            }
        )
        if request.repair_error:
            messages.append(
                {
                    "role": "user",
                    "content": f"Your previous output failed validation: {request.repair_error}. "
                    "Re-emit the full corrected JSON only.",
                }
            )
        body = json.dumps({"model": self.model, "messages": messages}).encode("utf-8")
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        req = urllib.request.Request(f"{self.base_url}/v1/chat/completions", data=body, headers=headers)
        try:
            with urllib.request.urlopen(req, timeout=self.timeout_ms / 1000.0) as resp:
                envelope = json.loads(resp.read().decode("utf-8"))
        except (urllib.error.URLError, TimeoutError, OSError) as e:
            raise ProviderError(f"provider transport failure: {e}") from None
        except json.JSONDecodeError as e:
            raise ProviderError(f"provider returned non-JSON envelope: {e}") from None
        try:
            content = envelope["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError):
            raise ProviderError("provider envelope missing choices[0].message.content") from None
        try:
            payload = json.loads(content)
        except json.JSONDecodeError:
            payload = None
        return ProviderResponse(raw_text=content, payload=payload if isinstance(payload, dict) else None)


def provider_from_env(env: dict | None = None):
    """Build a provider from CRITIQ_* environment configuration."""
    env = dict(os.environ if env is None else env)
    kind = env.get("CRITIQ_PROVIDER", "stub").lower()
    if kind in ("stub", "deterministic", ""):
        return DeterministicProvider()
    if kind == "remote":
        base_url = env.get("CRITIQ_BASE_URL", "")
        model = env.get("CRITIQ_MODEL", "")
        if not base_url or not model:
            raise ProviderError("remote provider requires CRITIQ_BASE_URL and CRITIQ_MODEL")
        return RemoteProvider(
            base_url=base_url,
            model=model,
            api_key=env.get("CRITIQ_API_KEY", ""),
            timeout_ms=int(env.get("CRITIQ_TIMEOUT_MS", DEFAULT_TIMEOUT_MS)),
        )
    raise ProviderError(f"unknown CRITIQ_PROVIDER {kind!r} (expected stub|remote)")
