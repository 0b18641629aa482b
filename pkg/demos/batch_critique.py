#!/usr/bin/env python3
"""Walk the whole critique pipeline in-process on the bundled checkout corpus.

Run from the repo root after `pip install -e .`:

    python demos/batch_critique.py
"""

from importlib import resources

from critiq import (
    CritiqueMode,
    DeterministicProvider,
    compose_agenda,
    parse_context,
    parse_document,
    run_panel,
    serialize_document,
    suggest_fixes,
)
from critiq.harness import load_corpus, score
from critiq.patches import apply_patch, preview_patch

fixtures = resources.files("critiq") / "fixtures"
doc = parse_document((fixtures / "checkout.json").read_text(encoding="utf-8"))
context = parse_context((fixtures / "checkout.context.json").read_text(encoding="utf-8"))
provider = DeterministicProvider()

print(f"=== Panel review of {doc.name!r} ===")
feedbacks = run_panel(doc, context, CritiqueMode.MULTI_PERSPECTIVE, provider)
for fb in feedbacks:
    print(f"  {fb.sourceRole.value:16s} issues={len(fb.issues)} priority={fb.priority.value}")

agenda = compose_agenda(feedbacks, doc, context)
print(f"\n=== Agenda (score {agenda.overallScore}/10) ===")
print(agenda.conversationalOpening)
for item in agenda.items:
    marker = " !" if item.conflicts else ""
    print(f"  [{item.priority.value:8s}] {item.title} ({len(item.issueIds)} issue(s), "
          f"effort {item.estimatedEffort}){marker}")
for conflict in agenda.conflictsToSurface:
    print(f"  trade-off: {conflict.tradeoffQuestion}")

print("\n=== Coverage against the seeded list ===")
corpus = load_corpus(fixtures / "checkout.json")
issues = [i for fb in feedbacks for i in fb.issues]
report = score(issues, corpus)
print(f"  matched {report.matched}/{report.total} seeds "
      f"(the rest are tagged for model-only review)")
print(f"  unmatched: {', '.join(report.unmatchedSeedIds)}")

print("\n=== Remediation for the first contrast issue ===")
issue = next(i for i in issues if i.issueType == "contrast_text")
print(f"  {issue.description}")
options = suggest_fixes(issue, doc, context)
for option in options:
    print(f"  option: {option.patch.label:28s} -> {option.compliance}")

chosen = options[0].patch
previewed = preview_patch(doc, chosen)
print(f"\n  preview leaves the original untouched: "
      f"{serialize_document(doc) != serialize_document(previewed)}")

patched, inverse = apply_patch(doc, chosen)
restored, _ = apply_patch(patched, inverse)
print(f"  apply -> undo restores the exact bytes: "
      f"{serialize_document(restored) == serialize_document(doc)}")
