"""Command-line entry points: run, score, compare, serve, apply, undo.

Exit codes: 0 success, 1 findings at or above the --fail-on severity,
2 usage or processing errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .analyzers import RuleConfig
from .coordinator import compose_agenda
from .errors import CritiqError
from .feedback import CritiqueMode, Severity
from .harness import build_report, compare_modes, comparison_dict, load_corpus, score
from .jsonutil import canonical_json
from .model import DesignContext, parse_context, parse_document, serialize_document
from .patches import apply_patch, patch_from_dict
from .perspectives import run_panel
from .providers import DeterministicProvider, provider_from_env

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_ERROR = 2

_MODES = {"multi": CritiqueMode.MULTI_PERSPECTIVE, "unified": CritiqueMode.UNIFIED}


def _load_context(path: str | None) -> DesignContext:
    if not path:
        return DesignContext()
    return parse_context(Path(path).read_text(encoding="utf-8"))


def _provider(args) -> object:
    if getattr(args, "config", None):
        raw = json.loads(Path(args.config).read_text(encoding="utf-8"))
        return DeterministicProvider(RuleConfig.from_dict(raw))
    return provider_from_env()


def _write_out(payload: dict, out: str | None):
    text = canonical_json(payload)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def cmd_run(args) -> int:
    doc = parse_document(Path(args.document).read_text(encoding="utf-8"))
    context = _load_context(args.context)
    mode = _MODES[args.mode]
    feedbacks = run_panel(doc, context, mode, _provider(args))
    agenda = compose_agenda(feedbacks, doc, context)
    issues = [i for fb in feedbacks for i in fb.issues]
    _write_out(build_report(mode, issues, agenda), args.out)
    if args.fail_on:
        gate = Severity(args.fail_on)
        if any(i.severity.at_least(gate) for i in issues):
            return EXIT_FINDINGS
    return EXIT_OK


def cmd_score(args) -> int:
    report = json.loads(Path(args.report).read_text(encoding="utf-8"))
    from .feedback import issue_from_dict

    detected = [issue_from_dict(i) for i in report.get("issues", [])]
    corpus = load_corpus(args.corpus)
    coverage = score(detected, corpus, mode=report.get("mode", ""))
    _write_out(coverage.to_dict(), args.out)
    return EXIT_OK


def cmd_compare(args) -> int:
    corpus = load_corpus(args.corpus)
    context = _load_context(args.context)
    multi, unified = compare_modes(corpus, context, _provider(args))
    _write_out(comparison_dict(multi, unified), args.out)
    return EXIT_OK


def cmd_serve(args) -> int:
    from .service import serve

    serve(host=args.host, port=args.port)
    return EXIT_OK


def cmd_apply(args) -> int:
    doc = parse_document(Path(args.document).read_text(encoding="utf-8"))
    patch = patch_from_dict(json.loads(Path(args.patchfile).read_text(encoding="utf-8")))
    new_doc, inverse = apply_patch(doc, patch)
    out = Path(args.out)
    out.write_text(serialize_document(new_doc) + "\n", encoding="utf-8")
    inverse_out = Path(args.inverse_out) if args.inverse_out else out.with_suffix(out.suffix + ".undo.json")
    from .patches import patch_dict

    inverse_out.write_text(canonical_json(patch_dict(inverse)) + "\n", encoding="utf-8")
    print(f"applied {patch.patchId}; inverse patch at {inverse_out}", file=sys.stderr)
    return EXIT_OK


def cmd_undo(args) -> int:
    # `apply` emits the inverse patch; `undo` plays it back onto the edited file
    doc = parse_document(Path(args.document).read_text(encoding="utf-8"))
    patch = patch_from_dict(json.loads(Path(args.patchfile).read_text(encoding="utf-8")))
    new_doc, _ = apply_patch(doc, patch)
    Path(args.out).write_text(serialize_document(new_doc) + "\n", encoding="utf-8")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="critiq", description="Multi-perspective design critique")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="critique a document and write a report")
    p_run.add_argument("document")
    p_run.add_argument("--context", help="context JSON file")
    p_run.add_argument("--mode", choices=list(_MODES), default="multi")
    p_run.add_argument("--out", help="report path (stdout when omitted)")
    p_run.add_argument("--fail-on", choices=[s.value for s in Severity], dest="fail_on")
    p_run.add_argument("--config", help="rule config JSON file")
    p_run.set_defaults(func=cmd_run)

    p_score = sub.add_parser("score", help="score a report against a seeded corpus")
    p_score.add_argument("--report", required=True)
    p_score.add_argument("--corpus", required=True, help="corpus document (sidecar .seeds expected)")
    p_score.add_argument("--out")
    p_score.set_defaults(func=cmd_score)

    p_cmp = sub.add_parser("compare", help="run both modes on a corpus and diff coverage")
    p_cmp.add_argument("--corpus", required=True)
    p_cmp.add_argument("--context")
    p_cmp.add_argument("--out")
    p_cmp.add_argument("--config")
    p_cmp.set_defaults(func=cmd_compare)

    p_serve = sub.add_parser("serve", help="start the session HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=None)
    p_serve.set_defaults(func=cmd_serve)

    p_apply = sub.add_parser("apply", help="apply a patch file to a document")
    p_apply.add_argument("document")
    p_apply.add_argument("patchfile")
    p_apply.add_argument("--out", required=True)
    p_apply.add_argument("--inverse-out", dest="inverse_out")
    p_apply.set_defaults(func=cmd_apply)

    p_undo = sub.add_parser("undo", help="apply an inverse patch emitted by `apply`")
    p_undo.add_argument("document")
    p_undo.add_argument("patchfile")
    p_undo.add_argument("--out", required=True)
    p_undo.set_defaults(func=cmd_undo)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_OK
    try:
        return args.func(args)
    except CritiqError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except (OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
