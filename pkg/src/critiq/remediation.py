"""Concrete fix generation for rule-detected issues.

Contrast fixes blend the foreground toward black or white in linear-light
space (chromaticity ratios are preserved until channels clip) and binary
search for the smallest blend whose 8-bit-rounded color clears the
threshold plus a 0.05 margin; the margin absorbs rounding error.
"""

from __future__ import annotations

from dataclasses import dataclass

from .analyzers import (
    CONTRAST_LARGE,
    CONTRAST_LARGE_STRICT,
    CONTRAST_NORMAL,
    CONTRAST_NORMAL_STRICT,
    DEFAULT_CONFIG,
    MIN_FONT_SIZE,
    MIN_TOUCH_TARGET,
    RuleConfig,
    RuleId,
    _is_large_text,
    contrast_ratio,
    effective_background,
    relative_luminance,
    text_foreground,
)
from .errors import InvalidOp, Unfixable
from .feedback import Issue
from .model import Bounds, Color, DesignContext, DesignDocument, DesignNode, find_node
from .patches import Patch, SetBounds, SetFontSize, SetSolidFill, preview_patch

RATIO_MARGIN = 0.05
SEARCH_ITERATIONS = 40  # spec floor is 30; extra iterations are free


@dataclass(frozen=True)
class RemediationOption:
    patch: Patch
    explanation: str
    compliance: dict


# ---------------------------------------------------------------------------
# Linear-light blending


def _to_linear(c: float) -> float:
    if c <= 0.03928:
        return c / 12.92
    return ((c + 0.055) / 1.055) ** 2.4


def _to_srgb(c: float) -> float:
    if c <= 0.03928 / 12.92:
        return c * 12.92
    return 1.055 * (c ** (1 / 2.4)) - 0.055


def _round_8bit(c: float) -> float:
    return round(min(max(c, 0.0), 1.0) * 255) / 255.0


def blend_toward_pole(color: Color, pole: float, t: float) -> Color:
    """Blend in linear light toward black (pole=0) or white (pole=1), 8-bit rounded."""
    channels = []
    for c in (color.r, color.g, color.b):
        lin = (1.0 - t) * _to_linear(c) + t * pole
        channels.append(_round_8bit(_to_srgb(lin)))
    return Color(*channels, a=1.0)


def _choose_pole(fg: Color, bg: Color, goal: float) -> float:
    """The blending pole that can actually reach the goal ratio.

    Preference goes to the side the foreground already sits on (smallest
    visual change); when that side's reachable contrast tops out below the
    goal (dark text on a dark background, say), the opposite pole is used.
    """
    lf, lb = relative_luminance(fg), relative_luminance(bg)
    black_reach = (lb + 0.05) / 0.05
    white_reach = 1.05 / (lb + 0.05)
    preferred = 0.0 if lf < lb else 1.0
    if lf == lb:
        preferred = 0.0 if black_reach >= white_reach else 1.0
    preferred_reach = black_reach if preferred == 0.0 else white_reach
    other_reach = white_reach if preferred == 0.0 else black_reach
    if preferred_reach < goal and other_reach >= goal:
        return 1.0 - preferred
    return preferred


def compliant_blend(start: Color, bg: Color, threshold: float) -> tuple[Color, float, float]:
    """Smallest blend of `start` toward a pole meeting threshold + margin.

    Returns (rounded color, t, pole). The ratio along the blend path is a
    false-then-true threshold predicate in t, so binary search converges on
    the first passing blend. Raises Unfixable when even the pole fails.
    """
    goal = threshold + RATIO_MARGIN
    pole = _choose_pole(start, bg, goal)

    def passes(t: float) -> bool:
        return contrast_ratio(blend_toward_pole(start, pole, t), bg) >= goal

    if passes(0.0):
        return blend_toward_pole(start, pole, 0.0), 0.0, pole
    if not passes(1.0):
        raise Unfixable(f"no blend of {start.to_hex()} toward either pole reaches {goal}:1")
    lo, hi = 0.0, 1.0
    for _ in range(SEARCH_ITERATIONS):
        mid = (lo + hi) / 2.0
        if passes(mid):
            hi = mid
        else:
            lo = mid
    return blend_toward_pole(start, pole, hi), hi, pole


def contrast_threshold_for(node: DesignNode, config: RuleConfig = DEFAULT_CONFIG) -> float:
    large = node.text is not None and _is_large_text(node.text.fontSize, node.text.fontWeight)
    if config.strictContrast:
        return CONTRAST_LARGE_STRICT if large else CONTRAST_NORMAL_STRICT
    return CONTRAST_LARGE if large else CONTRAST_NORMAL


# ---------------------------------------------------------------------------
# Fix families


def _require_rule(issue: Issue, rule: RuleId):
    if issue.issueType != rule.value.lower():
        raise InvalidOp(f"issue {issue.issueId} is {issue.issueType!r}, expected {rule.value.lower()!r}")


def _fill_patch(issue: Issue, node: DesignNode, color: Color, patch_id: str, label: str) -> Patch:
    return Patch(
        patchId=patch_id,
        label=label,
        ops=(SetSolidFill(node.id, len(node.fills) - 1, color),),
        origin=issue.issueId,
    )


def _recheck_ratio(doc: DesignDocument, patch: Patch, node_id: str) -> float:
    """Compliance is measured on the previewed document, never assumed."""
    previewed = preview_patch(doc, patch)
    node = find_node(previewed, node_id)
    fg = text_foreground(previewed, node)
    bg = effective_background(previewed, node)
    return contrast_ratio(fg, bg)


def suggest_contrast_fixes(
    issue: Issue,
    doc: DesignDocument,
    context: DesignContext,
    config: RuleConfig = DEFAULT_CONFIG,
) -> list[RemediationOption]:
    _require_rule(issue, RuleId.CONTRAST_TEXT)
    node = find_node(doc, issue.nodeId)
    if node is None or node.text is None or not node.fills:
        raise InvalidOp(f"issue {issue.issueId} does not target a filled TEXT node")
    fg = text_foreground(doc, node)
    bg = effective_background(doc, node)
    threshold = contrast_threshold_for(node, config)

    options: list[RemediationOption] = []
    seen: set[str] = set()

    def add(color: Color, patch_suffix: str, label: str, explanation: str):
        if color.to_hex() in seen:
            return
        seen.add(color.to_hex())
        patch = _fill_patch(issue, node, color, f"{issue.issueId}~{patch_suffix}", label)
        ratio = _recheck_ratio(doc, patch, node.id)
        options.append(
            RemediationOption(
                patch=patch,
                explanation=explanation,
                compliance={"ratio": round(ratio, 2), "threshold": threshold, "color": color.to_hex()},
            )
        )

    minimal, t_min, pole = compliant_blend(fg, bg, threshold)
    pole_name = "black" if pole == 0.0 else "white"
    add(
        minimal,
        "opt1",
        f"Minimal shift to {minimal.to_hex()}",
        f"Smallest change to the current color that meets {threshold}:1 (blended {t_min:.3f} toward {pole_name}).",
    )
    pole_color = Color(pole, pole, pole, 1.0)
    add(
        pole_color,
        "opt2",
        f"Maximum contrast ({pole_color.to_hex()})",
        f"Pure {pole_name} gives the strongest possible contrast against this background.",
    )
    if context.themeColor is not None:
        try:
            themed, _, _ = compliant_blend(
                Color(context.themeColor.r, context.themeColor.g, context.themeColor.b, 1.0), bg, threshold
            )
            add(
                themed,
                "opt3",
                f"Brand-aligned {themed.to_hex()}",
                f"Theme color adjusted until it meets {threshold}:1, keeping its hue balance.",
            )
        except Unfixable:
            pass

    if not options:
        raise Unfixable(f"no compliant color found for issue {issue.issueId}")
    return options[:3]


def suggest_size_fixes(issue: Issue, doc: DesignDocument) -> list[RemediationOption]:
    _require_rule(issue, RuleId.TOUCH_TARGET)
    node = find_node(doc, issue.nodeId)
    if node is None:
        raise InvalidOp(f"issue {issue.issueId} targets unknown node {issue.nodeId!r}")
    b = node.bounds
    new_w = max(b.w, MIN_TOUCH_TARGET)
    new_h = max(b.h, MIN_TOUCH_TARGET)
    new_bounds = Bounds(b.x + (b.w - new_w) / 2.0, b.y + (b.h - new_h) / 2.0, new_w, new_h)
    patch = Patch(
        patchId=f"{issue.issueId}~opt1",
        label=f"Grow to {new_w:g}x{new_h:g}px",
        ops=(SetBounds(node.id, new_bounds),),
        origin=issue.issueId,
    )
    previewed = preview_patch(doc, patch)
    after = find_node(previewed, node.id).bounds
    return [
        RemediationOption(
            patch=patch,
            explanation=(
                f"Expands the target to {new_w:g}x{new_h:g}px around its current center "
                f"so taps land reliably."
            ),
            compliance={"w": after.w, "h": after.h, "threshold": MIN_TOUCH_TARGET},
        )
    ]


def suggest_font_fixes(issue: Issue, doc: DesignDocument) -> list[RemediationOption]:
    _require_rule(issue, RuleId.FONT_SIZE)
    node = find_node(doc, issue.nodeId)
    if node is None or node.text is None:
        raise InvalidOp(f"issue {issue.issueId} does not target a TEXT node")
    patch = Patch(
        patchId=f"{issue.issueId}~opt1",
        label=f"Raise font size to {MIN_FONT_SIZE:g}px",
        ops=(SetFontSize(node.id, MIN_FONT_SIZE),),
        origin=issue.issueId,
    )
    previewed = preview_patch(doc, patch)
    after = find_node(previewed, node.id).text.fontSize
    return [
        RemediationOption(
            patch=patch,
            explanation=f"Raises the text to the {MIN_FONT_SIZE:g}px readable minimum.",
            compliance={"fontSize": after, "threshold": MIN_FONT_SIZE},
        )
    ]


def suggest_brand_fix(
    issue: Issue, doc: DesignDocument, context: DesignContext
) -> list[RemediationOption]:
    """Apply the unused theme color to the anchor node's fill, when it has one."""
    _require_rule(issue, RuleId.BRAND_COLOR_UNUSED)
    if context.themeColor is None:
        raise InvalidOp("brand fix requires a theme color in the context")
    node = find_node(doc, issue.nodeId)
    if node is None or not node.fills:
        return []
    theme = Color(context.themeColor.r, context.themeColor.g, context.themeColor.b, 1.0)
    patch = _fill_patch(issue, node, theme, f"{issue.issueId}~opt1", f"Use theme color {theme.to_hex()}")
    previewed = preview_patch(doc, patch)
    after = find_node(previewed, node.id).fills[-1]
    return [
        RemediationOption(
            patch=patch,
            explanation=f"Puts the brand's theme color {theme.to_hex()} on {node.name!r}.",
            compliance={"fill": after.to_hex()},
        )
    ]


def suggest_fixes(
    issue: Issue,
    doc: DesignDocument,
    context: DesignContext,
    config: RuleConfig = DEFAULT_CONFIG,
) -> list[RemediationOption]:
    """Dispatch to the fix family for the issue's rule; [] when none applies."""
    kind = issue.issueType
    if kind == RuleId.CONTRAST_TEXT.value.lower():
        return suggest_contrast_fixes(issue, doc, context, config)
    if kind == RuleId.TOUCH_TARGET.value.lower():
        return suggest_size_fixes(issue, doc)
    if kind == RuleId.FONT_SIZE.value.lower():
        return suggest_font_fixes(issue, doc)
    if kind == RuleId.BRAND_COLOR_UNUSED.value.lower():
        return suggest_brand_fix(issue, doc, context)
    return []
