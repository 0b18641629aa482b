"""Deterministic heuristic checks over a design document.

Three accessibility checks implement WCAG 2.1 AA math (contrast, touch
targets, font size); the remaining rules are declared-semantics stand-ins
for brand and engineering review. All checks are pure functions of
(document, context, config) and emit findings in a fixed order, so a run
is byte-reproducible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .feedback import Severity
from .model import Color, DesignContext, DesignDocument, DesignNode, NodeKind, node_index, walk

# WCAG 2.1 thresholds.
CONTRAST_NORMAL = 4.5
CONTRAST_LARGE = 3.0
CONTRAST_NORMAL_STRICT = 7.0
CONTRAST_LARGE_STRICT = 4.5
LARGE_TEXT_PX = 24.0
LARGE_TEXT_BOLD_PX = 18.67
BOLD_WEIGHT = 700
MIN_TOUCH_TARGET = 44.0
MIN_FONT_SIZE = 16.0

WHITE = Color(1.0, 1.0, 1.0, 1.0)

DEFAULT_FONT_ALLOWLIST = ("Inter", "Roboto", "SF Pro")
DEFAULT_NODE_BUDGET = 200
DEFAULT_CTA_LEXICON = ("buy", "enroll", "start", "submit", "checkout", "sign up", "add to cart", "join")
MAX_IMAGE_DIMENSION = 1000.0
MAX_CTA_COPY_LENGTH = 25
BRAND_CHANNEL_TOLERANCE = 2  # per 8-bit channel
PLACEHOLDER_MARKERS = ("lorem", "todo")
FONT_SIZE_EXEMPT_NAMES = ("caption", "label")


class RuleId(str, Enum):
    CONTRAST_TEXT = "CONTRAST_TEXT"
    TOUCH_TARGET = "TOUCH_TARGET"
    FONT_SIZE = "FONT_SIZE"
    BRAND_COLOR_UNUSED = "BRAND_COLOR_UNUSED"
    PLACEHOLDER_TEXT = "PLACEHOLDER_TEXT"
    CTA_COPY_LENGTH = "CTA_COPY_LENGTH"
    NONSTANDARD_FONT = "NONSTANDARD_FONT"
    NODE_BUDGET = "NODE_BUDGET"
    OVERSIZED_IMAGE = "OVERSIZED_IMAGE"


ALL_RULES = tuple(RuleId)


@dataclass(frozen=True)
class Finding:
    nodeId: str
    rule: RuleId
    severity: Severity
    measured: dict
    threshold: object
    message: str


@dataclass(frozen=True)
class RuleConfig:
    """Tunable rule parameters; file keys are all optional."""

    fontAllowlist: tuple[str, ...] = DEFAULT_FONT_ALLOWLIST
    nodeBudget: int = DEFAULT_NODE_BUDGET
    ctaLexicon: tuple[str, ...] = DEFAULT_CTA_LEXICON
    strictContrast: bool = False  # AAA thresholds (7:1 / 4.5:1), off by default

    @classmethod
    def from_dict(cls, raw: dict) -> "RuleConfig":
        kwargs = {}
        if "fontAllowlist" in raw:
            kwargs["fontAllowlist"] = tuple(raw["fontAllowlist"])
        if "nodeBudget" in raw:
            kwargs["nodeBudget"] = int(raw["nodeBudget"])
        if "ctaLexicon" in raw:
            kwargs["ctaLexicon"] = tuple(raw["ctaLexicon"])
        if "strictContrast" in raw:
            kwargs["strictContrast"] = bool(raw["strictContrast"])
        return cls(**kwargs)

    def cta_pattern(self) -> re.Pattern:
        alts = "|".join(re.escape(p) for p in sorted(self.ctaLexicon, key=len, reverse=True))
        return re.compile(rf"\b(?:{alts})\b", re.IGNORECASE)


DEFAULT_CONFIG = RuleConfig()


# ---------------------------------------------------------------------------
# WCAG 2.1 color math


def _linearize(channel: float) -> float:
    if channel <= 0.03928:
        return channel / 12.92
    return ((channel + 0.055) / 1.055) ** 2.4


def relative_luminance(c: Color) -> float:
    """WCAG 2.1 relative luminance; alpha is ignored."""
    return 0.2126 * _linearize(c.r) + 0.7152 * _linearize(c.g) + 0.0722 * _linearize(c.b)


def contrast_ratio(fg: Color, bg: Color) -> float:
    """(L_lighter + 0.05) / (L_darker + 0.05); symmetric, in [1, 21]."""
    lf, lb = relative_luminance(fg), relative_luminance(bg)
    lighter, darker = max(lf, lb), min(lf, lb)
    return (lighter + 0.05) / (darker + 0.05)


def composite_over(fg: Color, bg: Color) -> Color:
    """Source-over on sRGB-encoded components; result is opaque."""
    a = fg.a
    return Color(
        a * fg.r + (1 - a) * bg.r,
        a * fg.g + (1 - a) * bg.g,
        a * fg.b + (1 - a) * bg.b,
        1.0,
    )


def effective_background(doc: DesignDocument, node: DesignNode) -> Color:
    """Solid color behind a node: nearest filled ancestor composited over white.

    The nearest ancestor with at least one solid fill wins; translucent
    fills are composited (sRGB space) over the next filled ancestor and
    ultimately over white. No filled ancestor means white.
    """
    idx = node_index(doc)
    if node.id not in idx:
        return WHITE
    _, path = idx[node.id]
    ancestors = [idx[i][0] for i in reversed(path)]  # nearest-first

    def background_from(chain: list[DesignNode]) -> Color:
        for depth, ancestor in enumerate(chain):
            if ancestor.fills:
                top = ancestor.fills[-1]  # topmost painted fill
                if top.a >= 1.0:
                    return Color(top.r, top.g, top.b, 1.0)
                return composite_over(top, background_from(chain[depth + 1 :]))
        return WHITE

    return background_from(ancestors)


# ---------------------------------------------------------------------------
# Rule checks


def _is_large_text(font_size: float, font_weight: int) -> bool:
    return font_size >= LARGE_TEXT_PX or (font_size >= LARGE_TEXT_BOLD_PX and font_weight >= BOLD_WEIGHT)


def text_foreground(doc: DesignDocument, node: DesignNode) -> Color | None:
    """Effective (composited, opaque) text color, or None when unfilled."""
    if node.text is None or not node.fills:
        return None
    fg = node.fills[-1]
    if fg.a < 1.0:
        fg = composite_over(fg, effective_background(doc, node))
    return Color(fg.r, fg.g, fg.b, 1.0)


def check_contrast(doc: DesignDocument, context: DesignContext, config: RuleConfig = DEFAULT_CONFIG) -> list[Finding]:
    findings = []
    for node, _ in walk(doc):
        if node.kind is not NodeKind.TEXT or node.text is None:
            continue
        fg = text_foreground(doc, node)
        if fg is None:
            continue  # no measurable color
        bg = effective_background(doc, node)
        ratio = contrast_ratio(fg, bg)
        large = _is_large_text(node.text.fontSize, node.text.fontWeight)
        if config.strictContrast:
            threshold = CONTRAST_LARGE_STRICT if large else CONTRAST_NORMAL_STRICT
        else:
            threshold = CONTRAST_LARGE if large else CONTRAST_NORMAL
        if ratio >= threshold:
            continue
        severity = Severity.CRITICAL if ratio < threshold - 1.5 else Severity.HIGH
        size_class = "large" if large else "normal"
        findings.append(
            Finding(
                nodeId=node.id,
                rule=RuleId.CONTRAST_TEXT,
                severity=severity,
                measured={
                    "ratio": round(ratio, 2),
                    "foreground": fg.to_hex(),
                    "background": bg.to_hex(),
                    "fontSize": node.text.fontSize,
                    "fontWeight": node.text.fontWeight,
                },
                threshold=threshold,
                message=(
                    f"Text contrast ratio {ratio:.2f}:1 is below the required "
                    f"{threshold}:1 for {size_class} text."
                ),
            )
        )
    return findings


def _has_text_descendant(node: DesignNode) -> bool:
    return any(child.kind is NodeKind.TEXT or _has_text_descendant(child) for child in node.children)


def is_interactive_candidate(node: DesignNode, config: RuleConfig = DEFAULT_CONFIG) -> bool:
    """Touch-target candidates: containers holding text, or CTA-named nodes."""
    if node.kind in (NodeKind.FRAME, NodeKind.RECTANGLE, NodeKind.COMPONENT) and _has_text_descendant(node):
        return True
    return bool(config.cta_pattern().search(node.name))


def check_touch_targets(doc: DesignDocument, config: RuleConfig = DEFAULT_CONFIG) -> list[Finding]:
    findings = []
    for node, _ in walk(doc):
        if not is_interactive_candidate(node, config):
            continue
        w, h = node.bounds.w, node.bounds.h
        if w >= MIN_TOUCH_TARGET and h >= MIN_TOUCH_TARGET:
            continue
        short_sides = [s for s, v in (("width", w), ("height", h)) if v < MIN_TOUCH_TARGET]
        findings.append(
            Finding(
                nodeId=node.id,
                rule=RuleId.TOUCH_TARGET,
                severity=Severity.HIGH,
                measured={"w": w, "h": h},
                threshold=MIN_TOUCH_TARGET,
                message=(
                    f"Interactive target is {w:g}x{h:g}px; {' and '.join(short_sides)} "
                    f"falls below the {MIN_TOUCH_TARGET:g}x{MIN_TOUCH_TARGET:g}px minimum."
                ),
            )
        )
    return findings


def check_font_size(doc: DesignDocument, config: RuleConfig = DEFAULT_CONFIG) -> list[Finding]:
    findings = []
    for node, _ in walk(doc):
        if node.kind is not NodeKind.TEXT or node.text is None:
            continue
        if node.text.fontSize >= MIN_FONT_SIZE:
            continue
        lowered = node.name.lower()
        if any(marker in lowered for marker in FONT_SIZE_EXEMPT_NAMES):
            continue
        findings.append(
            Finding(
                nodeId=node.id,
                rule=RuleId.FONT_SIZE,
                severity=Severity.MEDIUM,
                measured={"fontSize": node.text.fontSize},
                threshold=MIN_FONT_SIZE,
                message=(
                    f"Body text is {node.text.fontSize:g}px, below the readable "
                    f"minimum of {MIN_FONT_SIZE:g}px."
                ),
            )
        )
    return findings


def cta_candidates(doc: DesignDocument, config: RuleConfig = DEFAULT_CONFIG) -> list[DesignNode]:
    """Nodes whose name or text characters match the CTA lexicon, walk order."""
    pattern = config.cta_pattern()
    out = []
    for node, _ in walk(doc):
        if pattern.search(node.name) or (node.text is not None and pattern.search(node.text.characters)):
            out.append(node)
    return out


def check_brand_color(doc: DesignDocument, context: DesignContext, config: RuleConfig = DEFAULT_CONFIG) -> list[Finding]:
    theme = context.themeColor
    if theme is None:
        return []
    target = [round(c * 255) for c in (theme.r, theme.g, theme.b)]
    best_delta = None
    for node, _ in walk(doc):
        for fill in node.fills:
            delta = max(abs(round(c * 255) - t) for c, t in zip((fill.r, fill.g, fill.b), target))
            best_delta = delta if best_delta is None else min(best_delta, delta)
            if delta <= BRAND_CHANNEL_TOLERANCE:
                return []
    ctas = cta_candidates(doc, config)
    anchor = ctas[0] if ctas else doc.frames[0]
    return [
        Finding(
            nodeId=anchor.id,
            rule=RuleId.BRAND_COLOR_UNUSED,
            severity=Severity.MEDIUM,
            measured={"themeColor": theme.to_hex(), "closestChannelDelta": best_delta},
            threshold=BRAND_CHANNEL_TOLERANCE,
            message=(
                f"The theme color {theme.to_hex()} does not appear in any fill; "
                f"consider using it on a key element such as {anchor.name!r}."
            ),
        )
    ]


def check_placeholder_text(doc: DesignDocument) -> list[Finding]:
    findings = []
    for node, _ in walk(doc):
        if node.text is None:
            continue
        lowered = node.text.characters.lower()
        hits = [m for m in PLACEHOLDER_MARKERS if m in lowered]
        if not hits:
            continue
        findings.append(
            Finding(
                nodeId=node.id,
                rule=RuleId.PLACEHOLDER_TEXT,
                severity=Severity.HIGH,
                measured={"matched": hits[0]},
                threshold=None,
                message=f"Placeholder copy ({hits[0]!r}) is still present and must be replaced before release.",
            )
        )
    return findings


def check_cta_copy_length(doc: DesignDocument, config: RuleConfig = DEFAULT_CONFIG) -> list[Finding]:
    pattern = config.cta_pattern()
    findings = []
    for node, _ in walk(doc):
        if node.text is None or not pattern.search(node.text.characters):
            continue
        length = len(node.text.characters)
        if length <= MAX_CTA_COPY_LENGTH:
            continue
        findings.append(
            Finding(
                nodeId=node.id,
                rule=RuleId.CTA_COPY_LENGTH,
                severity=Severity.MEDIUM,
                measured={"length": length, "characters": node.text.characters},
                threshold=MAX_CTA_COPY_LENGTH,
                message=(
                    f"Call-to-action copy is {length} characters; keep it at or under "
                    f"{MAX_CTA_COPY_LENGTH} so the action stays scannable."
                ),
            )
        )
    return findings


def check_fonts(doc: DesignDocument, config: RuleConfig = DEFAULT_CONFIG) -> list[Finding]:
    allow = {f.lower() for f in config.fontAllowlist}
    findings = []
    for node, _ in walk(doc):
        if node.text is None or node.text.fontFamily.lower() in allow:
            continue
        findings.append(
            Finding(
                nodeId=node.id,
                rule=RuleId.NONSTANDARD_FONT,
                severity=Severity.MEDIUM,
                measured={"fontFamily": node.text.fontFamily},
                threshold=list(config.fontAllowlist),
                message=(
                    f"Font {node.text.fontFamily!r} is outside the supported set "
                    f"({', '.join(config.fontAllowlist)}) and adds integration cost."
                ),
            )
        )
    return findings


def _subtree_size(node: DesignNode) -> int:
    return 1 + sum(_subtree_size(c) for c in node.children)


def check_node_budget(doc: DesignDocument, config: RuleConfig = DEFAULT_CONFIG) -> list[Finding]:
    findings = []
    for frame in doc.frames:
        count = _subtree_size(frame)
        if count <= config.nodeBudget:
            continue
        findings.append(
            Finding(
                nodeId=frame.id,
                rule=RuleId.NODE_BUDGET,
                severity=Severity.LOW,
                measured={"nodeCount": count},
                threshold=config.nodeBudget,
                message=(
                    f"Frame {frame.name!r} contains {count} nodes (budget {config.nodeBudget}); "
                    f"rendering and maintenance cost grows with layer count."
                ),
            )
        )
    return findings


def check_image_sizes(doc: DesignDocument) -> list[Finding]:
    findings = []
    for node, _ in walk(doc):
        if node.kind is not NodeKind.IMAGE:
            continue
        w, h = node.bounds.w, node.bounds.h
        if w <= MAX_IMAGE_DIMENSION and h <= MAX_IMAGE_DIMENSION:
            continue
        findings.append(
            Finding(
                nodeId=node.id,
                rule=RuleId.OVERSIZED_IMAGE,
                severity=Severity.MEDIUM,
                measured={"w": w, "h": h},
                threshold=MAX_IMAGE_DIMENSION,
                message=(
                    f"Image is {w:g}x{h:g}px; anything over {MAX_IMAGE_DIMENSION:g}px per side "
                    f"should be resized or lazy-loaded to protect load time."
                ),
            )
        )
    return findings


def run_rules(
    doc: DesignDocument,
    context: DesignContext,
    rules: Iterable[RuleId] = ALL_RULES,
    config: RuleConfig = DEFAULT_CONFIG,
) -> list[Finding]:
    """Run the selected checks in fixed rule order; output is deterministic."""
    selected = set(rules)
    out: list[Finding] = []
    for rule in ALL_RULES:
        if rule not in selected:
            continue
        if rule is RuleId.CONTRAST_TEXT:
            out.extend(check_contrast(doc, context, config))
        elif rule is RuleId.TOUCH_TARGET:
            out.extend(check_touch_targets(doc, config))
        elif rule is RuleId.FONT_SIZE:
            out.extend(check_font_size(doc, config))
        elif rule is RuleId.BRAND_COLOR_UNUSED:
            out.extend(check_brand_color(doc, context, config))
        elif rule is RuleId.PLACEHOLDER_TEXT:
            out.extend(check_placeholder_text(doc))
        elif rule is RuleId.CTA_COPY_LENGTH:
            out.extend(check_cta_copy_length(doc, config))
        elif rule is RuleId.NONSTANDARD_FONT:
            out.extend(check_fonts(doc, config))
        elif rule is RuleId.NODE_BUDGET:
            out.extend(check_node_budget(doc, config))
        elif rule is RuleId.OVERSIZED_IMAGE:
            out.extend(check_image_sizes(doc))
    return out
