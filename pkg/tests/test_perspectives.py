from __future__ import annotations

import json
import threading
import time

import pytest

from critiq.errors import PanelError, ProviderError, SchemaViolation
from critiq.feedback import PANEL_ROLES, CritiqueMode, Role, Severity
from critiq.model import Color, DesignContext
from critiq.perspectives import critique, render_role_prompt, run_panel
from critiq.providers import ROLE_RULES, DeterministicProvider, ProviderRequest, ProviderResponse


class TestRenderPrompt:
    def test_empty_context_marks_not_provided(self, empty_context):
        prompt = render_role_prompt(Role.USER_EXPERIENCE, empty_context)
        assert prompt.count("not provided") == 4

    def test_theme_color_embedded(self):
        ctx = DesignContext(themeColor=Color.from_hex("#3366FF"))
        prompt = render_role_prompt(Role.PRODUCT_VISION, ctx)
        assert "#3366FF" in prompt

    def test_unified_has_each_scope_once(self, empty_context):
        prompt = render_role_prompt(Role.UNIFIED, empty_context)
        assert prompt.count("Business Goal Alignment") == 1
        assert prompt.count("WCAG 2.1 AA & AAA") == 1
        assert prompt.count("Engineering Feasibility") == 1
        assert prompt.count("# Analysis Scope (User Experience)") == 1

    def test_coordinator_not_renderable(self, empty_context):
        with pytest.raises(ValueError):
            render_role_prompt(Role.COORDINATOR, empty_context)


class TestCritique:
    def test_ux_matches_rule_oracle(self, checkout_doc, checkout_context, provider):
        fb = critique(Role.USER_EXPERIENCE, checkout_doc, checkout_context, provider)
        got = {(i.nodeId, i.issueType) for i in fb.issues}
        assert got == {
            ("cart-item-1-sub", "contrast_text"),
            ("cart-cta-label", "contrast_text"),
            ("cart-cta", "touch_target"),
            ("review-cta", "touch_target"),
            ("ship-terms", "font_size"),
            ("review-gift", "font_size"),
        }
        assert all(i.sourceRole is Role.USER_EXPERIENCE for i in fb.issues)

    def test_unified_is_union_single_role(self, checkout_doc, checkout_context, provider):
        unified = critique(Role.UNIFIED, checkout_doc, checkout_context, provider)
        union = set()
        for role in PANEL_ROLES:
            fb = critique(role, checkout_doc, checkout_context, provider)
            union |= {(i.nodeId, i.issueType) for i in fb.issues}
        assert {(i.nodeId, i.issueType) for i in unified.issues} == union
        assert {i.sourceRole for i in unified.issues} == {Role.UNIFIED}

    def test_clean_doc_empty_low_priority(self, checkout_clean_doc, checkout_context, provider):
        for role in PANEL_ROLES:
            fb = critique(role, checkout_clean_doc, checkout_context, provider)
            assert fb.issues == ()
            assert fb.priority is Severity.LOW

    def test_priority_is_max_severity(self, checkout_doc, checkout_context, provider):
        fb = critique(Role.USER_EXPERIENCE, checkout_doc, checkout_context, provider)
        assert fb.priority is Severity.CRITICAL

    def test_role_rule_partition(self):
        owned = [r for rules in (ROLE_RULES[role] for role in PANEL_ROLES) for r in rules]
        assert len(owned) == len(set(owned)) == 9
        assert set(ROLE_RULES[Role.UNIFIED]) == set(owned)

    def test_issue_id_format(self, checkout_doc, checkout_context, provider):
        fb = critique(Role.ENGINEERING, checkout_doc, checkout_context, provider)
        assert "ENG-pay-security-NONSTANDARD_FONT" in {i.issueId for i in fb.issues}


class _BrokenProvider:
    """Returns garbage once, then a valid payload: exercises the repair retry."""

    def __init__(self, fail_times=1):
        self.fail_times = fail_times
        self.calls = []
        self.inner = DeterministicProvider()

    def complete(self, request: ProviderRequest) -> ProviderResponse:
        self.calls.append(request)
        if len(self.calls) <= self.fail_times:
            return ProviderResponse(raw_text="SORRY NO JSON", payload=None)
        return self.inner.complete(request)


class _WrongRoleProvider:
    def complete(self, request):
        payload = {
            "feedback_id": "x", "source_role": "engineering", "issues": [],
            "summary": "", "priority": "low", "detailed_analysis": "",
        }
        return ProviderResponse(raw_text=json.dumps(payload), payload=payload)


class TestSchemaGate:
    def test_one_repair_retry_succeeds(self, checkout_doc, checkout_context):
        provider = _BrokenProvider(fail_times=1)
        fb = critique(Role.USER_EXPERIENCE, checkout_doc, checkout_context, provider)
        assert len(provider.calls) == 2
        assert provider.calls[1].repair_error is not None
        assert fb.sourceRole is Role.USER_EXPERIENCE

    def test_two_failures_reject(self, checkout_doc, checkout_context):
        provider = _BrokenProvider(fail_times=2)
        with pytest.raises(SchemaViolation):
            critique(Role.USER_EXPERIENCE, checkout_doc, checkout_context, provider)
        assert len(provider.calls) == 2  # exactly one retry

    def test_role_mismatch_rejected(self, checkout_doc, checkout_context):
        with pytest.raises(SchemaViolation, match="source_role"):
            critique(Role.USER_EXPERIENCE, checkout_doc, checkout_context, _WrongRoleProvider())


class _FlakyRole:
    """Fails one role's requests; others go through the deterministic path."""

    def __init__(self, bad_role: Role):
        self.bad_role = bad_role
        self.inner = DeterministicProvider()

    def complete(self, request):
        if request.role is self.bad_role:
            raise ProviderError("simulated timeout")
        return self.inner.complete(request)


class _SlowUX:
    """UX responds last; merge order must not care."""

    def __init__(self):
        self.inner = DeterministicProvider()

    def complete(self, request):
        if request.role is Role.USER_EXPERIENCE:
            time.sleep(0.15)
        return self.inner.complete(request)


class TestRunPanel:
    def test_multi_returns_three_in_fixed_order(self, checkout_doc, checkout_context, provider):
        feedbacks = run_panel(checkout_doc, checkout_context, CritiqueMode.MULTI_PERSPECTIVE, provider)
        assert [fb.sourceRole for fb in feedbacks] == list(PANEL_ROLES)

    def test_unified_returns_one(self, checkout_doc, checkout_context, provider):
        feedbacks = run_panel(checkout_doc, checkout_context, CritiqueMode.UNIFIED, provider)
        assert [fb.sourceRole for fb in feedbacks] == [Role.UNIFIED]

    def test_partial_failure_surfaces_successes(self, checkout_doc, checkout_context):
        with pytest.raises(PanelError) as exc:
            run_panel(checkout_doc, checkout_context, CritiqueMode.MULTI_PERSPECTIVE,
                      _FlakyRole(Role.PRODUCT_VISION))
        assert set(exc.value.succeeded) == {Role.USER_EXPERIENCE, Role.ENGINEERING}
        assert set(exc.value.failed) == {Role.PRODUCT_VISION}

    def test_order_independent_of_completion(self, checkout_doc, checkout_context, provider):
        slow = run_panel(checkout_doc, checkout_context, CritiqueMode.MULTI_PERSPECTIVE, _SlowUX())
        fast = run_panel(checkout_doc, checkout_context, CritiqueMode.MULTI_PERSPECTIVE, provider)
        assert [fb.sourceRole for fb in slow] == [fb.sourceRole for fb in fast]
        assert [len(fb.issues) for fb in slow] == [len(fb.issues) for fb in fast]

    def test_provider_safe_for_concurrent_calls(self, checkout_doc, checkout_context, provider):
        results = []

        def work():
            results.append(run_panel(checkout_doc, checkout_context, CritiqueMode.MULTI_PERSPECTIVE, provider))

        threads = [threading.Thread(target=work) for _ in range(4)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        baseline = [[i.issueId for i in fb.issues] for fb in results[0]]
        assert all([[i.issueId for i in fb.issues] for fb in r] == baseline for r in results)
