#!/usr/bin/env python3
"""Regenerate the bundled corpora under src/critiq/fixtures/.

Each corpus ships four files: the seeded document, a sidecar .seeds list,
a clean variant that must produce zero findings, and a context file.
Run from the repo root: python tools/make_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "critiq" / "fixtures"

WHITE = {"r": 1.0, "g": 1.0, "b": 1.0, "a": 1.0}


def rgb(hexcode: str, a: float = 1.0) -> dict:
    h = hexcode.lstrip("#")
    r, g, b = (int(h[i : i + 2], 16) / 255.0 for i in (0, 2, 4))
    return {"r": round(r, 6), "g": round(g, 6), "b": round(b, 6), "a": a}


def solid(hexcode: str, a: float = 1.0) -> list:
    return [{"type": "SOLID", "color": rgb(hexcode, a)}]


def node(nid, name, ntype, x, y, w, h, fills=None, strokes=None, text=None, children=None):
    out = {
        "id": nid,
        "name": name,
        "type": ntype,
        "bounds": {"x": x, "y": y, "w": w, "h": h},
        "fills": fills or [],
        "strokes": strokes or [],
    }
    if text is not None:
        out["text"] = text
    if children is not None:
        out["children"] = children
    return out


def txt(characters, size, weight=400, family="Inter"):
    return {"characters": characters, "fontSize": size, "fontWeight": weight, "fontFamily": family}


# ---------------------------------------------------------------------------
# Corpus 1: e-commerce checkout


def checkout(clean: bool) -> dict:
    sub_color = "#4B5563" if clean else "#9AA0A6"          # seed S01 when dirty
    cta_fill = "#3366FF" if clean else "#F2F4F7"           # clean uses the theme color
    cta_label_color = "#FFFFFF" if clean else "#8A94A6"    # seed S02 when dirty
    cta_h = 48 if clean else 40                            # seed S03 when dirty
    review_cta_h = 48 if clean else 30                     # seed S04 when dirty
    terms_size = 16 if clean else 12                       # seed S05 when dirty
    gift_size = 16 if clean else 13                        # seed S06 when dirty
    help_copy = (
        "Tell us where to deliver your order."
        if clean
        else "Lorem ipsum dolor sit amet, tell us where to deliver."  # seed S07
    )
    promo_copy = (
        "Save 20% on your first order"
        if clean
        else "Submit your address now and save 20% on your first order"  # seed S08
    )
    security_font = "Inter" if clean else "Papyrus"        # seed S09 when dirty
    banner_w, banner_h = (716, 240) if clean else (1200, 400)  # seed S10 when dirty

    frames = [
        node(
            "frame-cart", "Cart", "FRAME", 0, 0, 390, 844, fills=solid("#FFFFFF"),
            children=[
                node("cart-title", "cart-title", "TEXT", 16, 24, 200, 32, fills=solid("#111827"),
                     text=txt("Your Cart", 24, 700)),
                node(
                    "cart-item-1", "cart-item-row", "FRAME", 16, 72, 358, 96, fills=solid("#F9FAFB"),
                    children=[
                        node("cart-item-1-thumb", "thumb", "IMAGE", 24, 80, 80, 80),
                        node("cart-item-1-name", "item-name", "TEXT", 112, 84, 180, 24,
                             fills=solid("#111827"), text=txt("Canvas Sneakers", 16, 600)),
                        node("cart-item-1-sub", "item-sub", "TEXT", 112, 110, 180, 20,
                             fills=solid(sub_color), text=txt("Size 42, sand", 16)),
                        node("cart-item-1-price", "caption-price", "TEXT", 300, 84, 60, 16,
                             fills=solid("#6B7280"), text=txt("$89.00", 10, 500)),
                    ],
                ),
                node(
                    "cart-cta", "cta-button", "FRAME", 16, 760, 343, cta_h, fills=solid(cta_fill),
                    children=[
                        node("cart-cta-label", "cta-label", "TEXT", 148, 770, 100, 20,
                             fills=solid(cta_label_color), text=txt("Checkout", 17, 600)),
                    ],
                ),
            ],
        ),
        node(
            "frame-shipping", "Shipping", "FRAME", 430, 0, 390, 844, fills=solid("#FFFFFF"),
            children=[
                node("ship-title", "shipping-title", "TEXT", 446, 24, 250, 32, fills=solid("#111827"),
                     text=txt("Shipping Address", 24, 700)),
                node(
                    "ship-form", "address-form", "FRAME", 446, 72, 358, 180,
                    children=[
                        node("ship-help", "form-help", "TEXT", 462, 80, 326, 40,
                             fills=solid("#374151"), text=txt(help_copy, 16)),
                        node("ship-label-name", "field-label-name", "TEXT", 462, 132, 120, 18,
                             fills=solid("#374151"), text=txt("Full name", 14, 500)),
                        node("ship-input-1", "input-box", "RECTANGLE", 462, 154, 326, 48,
                             strokes=[{"color": rgb("#D1D5DB"), "weight": 1}]),
                    ],
                ),
                node("ship-terms", "terms-note", "TEXT", 446, 280, 326, 16, fills=solid("#4B5563"),
                     text=txt("By continuing you accept our terms and privacy policy.", terms_size)),
                node("ship-promo", "promo-note", "TEXT", 446, 320, 326, 20, fills=solid("#374151"),
                     text=txt(promo_copy, 16)),
            ],
        ),
        node(
            "frame-payment", "Payment", "FRAME", 860, 0, 390, 844, fills=solid("#FFFFFF"),
            children=[
                node("pay-title", "payment-title", "TEXT", 876, 24, 200, 32, fills=solid("#111827"),
                     text=txt("Payment", 24, 700)),
                node(
                    "pay-card-row", "card-row", "FRAME", 876, 72, 358, 56, fills=solid("#F9FAFB"),
                    children=[
                        node("pay-card-label", "card-number-label", "TEXT", 892, 80, 120, 18,
                             fills=solid("#374151"), text=txt("Card number", 13, 500)),
                        node("pay-card-hint", "card-hint", "TEXT", 892, 100, 220, 20,
                             fills=solid("#4B5563"), text=txt("4242 4242 4242 4242", 16)),
                    ],
                ),
                node("pay-security", "security-note", "TEXT", 876, 160, 326, 20, fills=solid("#374151"),
                     text=txt("Payments are encrypted end to end.", 16, 400, security_font)),
                node(
                    "pay-express", "express-pay", "FRAME", 876, 700, 343, 48, fills=solid("#111827"),
                    children=[
                        node("pay-express-label", "express-label", "TEXT", 1010, 714, 80, 20,
                             fills=solid("#FFFFFF"), text=txt("Pay now", 17, 600)),
                    ],
                ),
            ],
        ),
        node(
            "frame-review", "Order Review", "FRAME", 1290, 0, 390, 844, fills=solid("#FFFFFF"),
            children=[
                node("review-title", "review-title", "TEXT", 1306, 24, 220, 32, fills=solid("#111827"),
                     text=txt("Review Order", 24, 700)),
                node("review-banner", "confirmation-banner", "IMAGE", 1306, 72, banner_w, banner_h),
                node(
                    "review-summary", "summary-row", "FRAME", 1306, 500, 358, 64, fills=solid("#F9FAFB"),
                    children=[
                        node("review-summary-text", "summary-text", "TEXT", 1322, 520, 200, 24,
                             fills=solid("#111827"), text=txt("3 items, $240.00", 16, 600)),
                    ],
                ),
                node("review-gift", "gift-note", "TEXT", 1306, 600, 220, 18, fills=solid("#4B5563"),
                     text=txt("Add a gift message", gift_size)),
                node(
                    "review-cta", "place-order", "FRAME", 1306, 760, 343, review_cta_h,
                    fills=solid("#E5E7EB"),
                    children=[
                        node("review-cta-label", "place-order-label", "TEXT", 1436, 766, 100, 20,
                             fills=solid("#374151"), text=txt("Place order", 16, 600)),
                    ],
                ),
            ],
        ),
    ]
    return {"schemaVersion": 1, "name": "E-commerce Checkout", "frames": frames}


CHECKOUT_SEEDS = [
    {"seedId": "S01", "nodeId": "cart-item-1-sub", "kind": "CONTRAST_TEXT",
     "description": "Cart item subtitle is light gray on a light row (ratio ~2.5)."},
    {"seedId": "S02", "nodeId": "cart-cta-label", "kind": "CONTRAST_TEXT",
     "description": "Checkout label is muted gray-blue on a pale button (ratio ~2.8)."},
    {"seedId": "S03", "nodeId": "cart-cta", "kind": "TOUCH_TARGET",
     "description": "Checkout button is 40px tall."},
    {"seedId": "S04", "nodeId": "review-cta", "kind": "TOUCH_TARGET",
     "description": "Place-order button is 30px tall."},
    {"seedId": "S05", "nodeId": "ship-terms", "kind": "FONT_SIZE",
     "description": "Terms note set at 12px."},
    {"seedId": "S06", "nodeId": "review-gift", "kind": "FONT_SIZE",
     "description": "Gift note set at 13px."},
    {"seedId": "S07", "nodeId": "ship-help", "kind": "PLACEHOLDER_TEXT",
     "description": "Shipping helper copy still starts with lorem ipsum."},
    {"seedId": "S08", "nodeId": "ship-promo", "kind": "CTA_COPY_LENGTH",
     "description": "Submit-promo line runs 57 characters."},
    {"seedId": "S09", "nodeId": "pay-security", "kind": "NONSTANDARD_FONT",
     "description": "Security note uses Papyrus."},
    {"seedId": "S10", "nodeId": "review-banner", "kind": "OVERSIZED_IMAGE",
     "description": "Confirmation banner exported at 1200px wide."},
    {"seedId": "S11", "nodeId": "cart-cta-label", "kind": "BRAND_COLOR_UNUSED",
     "description": "Theme blue #3366FF appears nowhere; checkout CTA is the natural anchor."},
    {"seedId": "S12", "nodeId": "frame-cart", "kind": "information_architecture",
     "description": "Cart lacks a running total near the primary action."},
    {"seedId": "S13", "nodeId": "frame-payment", "kind": "market_fit",
     "description": "Only card payment shown; target market expects wallets."},
    {"seedId": "S14", "nodeId": "ship-form", "kind": "conversion_flow",
     "description": "Address form has no autofill affordance."},
    {"seedId": "S15", "nodeId": "review-summary", "kind": "visual_hierarchy",
     "description": "Order total does not stand out on the review step."},
    {"seedId": "S16", "nodeId": "cart-title", "kind": "copy_tone",
     "description": "Cart title misses the sale urgency the goal calls for."},
]

CHECKOUT_CONTEXT = {
    "productGoal": "Increase checkout conversion for the spring sale",
    "brandKeywords": ["trustworthy", "efficient", "modern"],
    "themeColor": "#3366FF",
    "targetUsers": "Mobile-first shoppers aged 20-40",
}


# ---------------------------------------------------------------------------
# Corpus 2: online course detail


def course(clean: bool) -> dict:
    rating_size = 16 if clean else 11                       # seed T01
    urgency_copy = (
        "Start anytime"
        if clean
        else "Enroll now to start learning today and save on annual plans"  # seed T02
    )
    row2_h = 56 if clean else 36                            # seed T03
    syllabus_copy = (
        "Full syllabus available in week one" if clean else "Full syllabus TODO after review"  # seed T04
    )
    duration_color = "#4B5563" if clean else "#A3A8B0"      # seed T05
    photo_w, photo_h = (700, 450) if clean else (1400, 900)  # seed T06
    bio_font = "Inter" if clean else "Comic Sans MS"        # seed T07
    hours_color = "#4B5563" if clean else "#8E959E"         # seed T08
    author_size = 16 if clean else 13                       # seed T09
    join_h = 48 if clean else 40                            # seed T10
    badge_count = 12 if clean else 208                      # seed T11

    badges = [
        node(f"badge-{i}", f"badge-{i}", "VECTOR", 1736 + (i % 10) * 36, 120 + (i // 10) * 36, 24, 24,
             fills=solid("#D1D5DB"))
        for i in range(badge_count)
    ]

    frames = [
        node(
            "frame-overview", "Course Overview", "FRAME", 0, 0, 390, 844, fills=solid("#FFFFFF"),
            children=[
                node("ov-title", "course-title", "TEXT", 16, 24, 358, 40, fills=solid("#111827"),
                     text=txt("Machine Learning Foundations", 28, 700)),
                node("ov-hero", "course-hero", "IMAGE", 16, 80, 358, 200),
                node("ov-subtitle", "course-subtitle", "TEXT", 16, 296, 358, 24, fills=solid("#4B5563"),
                     text=txt("A practical introduction for busy engineers", 16)),
                node("ov-rating", "rating-note", "TEXT", 16, 330, 200, 16, fills=solid("#374151"),
                     text=txt("4.8 stars, 2300 reviews", rating_size)),
                node("ov-price", "price-caption", "TEXT", 16, 356, 160, 16, fills=solid("#4B5563"),
                     text=txt("From $29/month", 12, 500)),
                node(
                    "ov-cta", "enroll-button", "FRAME", 16, 760, 343, 48, fills=solid("#7C3AED"),
                    children=[
                        node("ov-cta-label", "cta-label", "TEXT", 150, 774, 90, 20,
                             fills=solid("#FFFFFF"), text=txt("Enroll Now", 17, 600)),
                    ],
                ),
                node("ov-urgency", "urgency-copy", "TEXT", 16, 700, 358, 20, fills=solid("#374151"),
                     text=txt(urgency_copy, 16)),
            ],
        ),
        node(
            "frame-curriculum", "Curriculum", "FRAME", 430, 0, 390, 844, fills=solid("#FFFFFF"),
            children=[
                node("cur-title", "curriculum-title", "TEXT", 446, 24, 300, 32, fills=solid("#111827"),
                     text=txt("What you'll learn", 24, 700)),
                node(
                    "cur-row-1", "module-row-1", "FRAME", 446, 72, 358, 56, fills=solid("#F9FAFB"),
                    children=[
                        node("cur-row-1-text", "module-1-text", "TEXT", 462, 88, 300, 24,
                             fills=solid("#111827"), text=txt("1. Linear models", 16)),
                    ],
                ),
                node(
                    "cur-row-2", "module-row-2", "FRAME", 446, 140, 358, row2_h, fills=solid("#F9FAFB"),
                    children=[
                        node("cur-row-2-text", "module-2-text", "TEXT", 462, 148, 300, 24,
                             fills=solid("#111827"), text=txt("2. Trees and ensembles", 16)),
                    ],
                ),
                node("cur-note", "syllabus-note", "TEXT", 446, 220, 326, 20, fills=solid("#374151"),
                     text=txt(syllabus_copy, 16)),
                node("cur-duration", "duration-hint", "TEXT", 446, 260, 260, 20,
                     fills=solid(duration_color), text=txt("6 weeks, 4 hrs/week", 16)),
            ],
        ),
        node(
            "frame-instructor", "Instructor", "FRAME", 860, 0, 390, 844, fills=solid("#FFFFFF"),
            children=[
                node("ins-title", "instructor-title", "TEXT", 876, 24, 260, 32, fills=solid("#111827"),
                     text=txt("Your instructor", 24, 700)),
                node("ins-photo", "instructor-photo", "IMAGE", 876, 72, photo_w, photo_h),
                node("ins-name", "instructor-name", "TEXT", 876, 540, 220, 26, fills=solid("#111827"),
                     text=txt("Dr. Maya Chen", 18, 600)),
                node("ins-bio", "instructor-bio", "TEXT", 876, 574, 340, 22, fills=solid("#374151"),
                     text=txt("15 years in applied ML at scale", 16, 400, bio_font)),
                node("ins-hours", "office-hours", "TEXT", 876, 606, 280, 20, fills=solid(hours_color),
                     text=txt("Live Q&A every Thursday", 16, 500)),
            ],
        ),
        node(
            "frame-reviews", "Reviews", "FRAME", 1290, 0, 390, 844, fills=solid("#FFFFFF"),
            children=[
                node("rev-title", "reviews-title", "TEXT", 1306, 24, 280, 32, fills=solid("#111827"),
                     text=txt("What learners say", 24, 700)),
                node(
                    "rev-card-1", "review-card", "FRAME", 1306, 72, 358, 120, fills=solid("#F9FAFB"),
                    children=[
                        node("rev-card-1-quote", "review-quote", "TEXT", 1322, 88, 320, 44,
                             fills=solid("#111827"), text=txt("Clear, practical, worth it.", 16)),
                        node("rev-card-1-author", "review-author", "TEXT", 1322, 140, 240, 18,
                             fills=solid("#4B5563"), text=txt("Jordan, data analyst", author_size)),
                    ],
                ),
                node(
                    "rev-join", "join-strip", "FRAME", 1306, 760, 343, join_h, fills=solid("#EDE9FE"),
                    children=[
                        node("rev-join-label", "cohort-cta-label", "TEXT", 1390, 772, 180, 20,
                             fills=solid("#4C1D95"), text=txt("Join the next cohort", 16, 600)),
                    ],
                ),
            ],
        ),
        node(
            "frame-badges", "Badge Wall", "FRAME", 1720, 0, 390, 844, fills=solid("#FFFFFF"),
            children=[
                node("badge-title", "badges-title", "TEXT", 1736, 24, 160, 32, fills=solid("#111827"),
                     text=txt("Badges", 24, 700)),
                *badges,
            ],
        ),
    ]
    return {"schemaVersion": 1, "name": "Online Course Detail", "frames": frames}


COURSE_SEEDS = [
    {"seedId": "T01", "nodeId": "ov-rating", "kind": "FONT_SIZE",
     "description": "Rating note set at 11px."},
    {"seedId": "T02", "nodeId": "ov-urgency", "kind": "CTA_COPY_LENGTH",
     "description": "Enroll urgency line runs 61 characters."},
    {"seedId": "T03", "nodeId": "cur-row-2", "kind": "TOUCH_TARGET",
     "description": "Second curriculum row is 36px tall."},
    {"seedId": "T04", "nodeId": "cur-note", "kind": "PLACEHOLDER_TEXT",
     "description": "Syllabus note still carries a TODO."},
    {"seedId": "T05", "nodeId": "cur-duration", "kind": "CONTRAST_TEXT",
     "description": "Duration hint is pale gray on white (ratio ~2.4)."},
    {"seedId": "T06", "nodeId": "ins-photo", "kind": "OVERSIZED_IMAGE",
     "description": "Instructor photo exported at 1400x900."},
    {"seedId": "T07", "nodeId": "ins-bio", "kind": "NONSTANDARD_FONT",
     "description": "Bio uses Comic Sans MS."},
    {"seedId": "T08", "nodeId": "ins-hours", "kind": "CONTRAST_TEXT",
     "description": "Office-hours line is light gray on white (ratio ~3.0)."},
    {"seedId": "T09", "nodeId": "rev-card-1-author", "kind": "FONT_SIZE",
     "description": "Review attribution set at 13px."},
    {"seedId": "T10", "nodeId": "rev-join", "kind": "TOUCH_TARGET",
     "description": "Join strip is 40px tall."},
    {"seedId": "T11", "nodeId": "frame-badges", "kind": "NODE_BUDGET",
     "description": "Badge wall frame holds 210 nodes."},
    {"seedId": "T12", "nodeId": "rev-card-1", "kind": "social_proof",
     "description": "Only one testimonial is shown."},
    {"seedId": "T13", "nodeId": "frame-curriculum", "kind": "information_architecture",
     "description": "No module count or total time summary."},
    {"seedId": "T14", "nodeId": "ov-title", "kind": "visual_hierarchy",
     "description": "Title competes with the hero image for attention."},
    {"seedId": "T15", "nodeId": "frame-overview", "kind": "navigation",
     "description": "No persistent enroll affordance while scrolling."},
    {"seedId": "T16", "nodeId": "ins-name", "kind": "copy_tone",
     "description": "Instructor credentials lack specificity."},
]

COURSE_CONTEXT = {
    "productGoal": "Grow course enrollments from the landing page",
    "brandKeywords": ["expert", "approachable", "practical"],
    "themeColor": "#7C3AED",
    "targetUsers": "Working professionals learning part-time",
}


# ---------------------------------------------------------------------------
# Conflict fixtures


def conflict_pair() -> dict:
    return {
        "schemaVersion": 1,
        "name": "Brand vs Contrast",
        "frames": [
            node(
                "frame-home", "Home", "FRAME", 0, 0, 390, 844, fills=solid("#FFFFFF"),
                children=[
                    node(
                        "home-cta", "primary-button", "FRAME", 16, 760, 343, 48, fills=solid("#F2F4F7"),
                        children=[
                            node("home-cta-label", "cta-label", "TEXT", 150, 774, 90, 20,
                                 fills=solid("#8A94A6"), text=txt("Buy now", 17, 600)),
                        ],
                    ),
                ],
            )
        ],
    }


def conflict_disjoint() -> dict:
    return {
        "schemaVersion": 1,
        "name": "Disjoint Issues",
        "frames": [
            node(
                "frame-home", "Home", "FRAME", 0, 0, 390, 844, fills=solid("#FFFFFF"),
                children=[
                    node("welcome-copy", "welcome-copy", "TEXT", 16, 100, 300, 24,
                         fills=solid("#A3A8B0"), text=txt("Welcome back", 16)),
                    node("buy-label", "buy-label", "TEXT", 16, 760, 120, 48,
                         fills=solid("#111827"), text=txt("Buy", 17, 600)),
                ],
            )
        ],
    }


CONFLICT_CONTEXT = {
    "productGoal": "Drive first purchases",
    "brandKeywords": ["bold"],
    "themeColor": "#3366FF",
    "targetUsers": "New visitors",
}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    files = {
        "checkout.json": checkout(clean=False),
        "checkout_clean.json": checkout(clean=True),
        "checkout.seeds": {"seeds": CHECKOUT_SEEDS},
        "checkout.context.json": CHECKOUT_CONTEXT,
        "course.json": course(clean=False),
        "course_clean.json": course(clean=True),
        "course.seeds": {"seeds": COURSE_SEEDS},
        "course.context.json": COURSE_CONTEXT,
        "conflict_pair.json": conflict_pair(),
        "conflict_disjoint.json": conflict_disjoint(),
        "conflict.context.json": CONFLICT_CONTEXT,
    }
    for name, payload in files.items():
        path = OUT / name
        path.write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
