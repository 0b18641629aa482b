"""HTTP surface for critique sessions, consumed by the CLI and the studio UI."""

from __future__ import annotations

import json
import os

from fastapi import Body, FastAPI, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response

from . import __version__
from .coordinator import agenda_dict
from .errors import (
    CritiqError,
    DocumentSyntaxError,
    EmptyHistory,
    InvalidOp,
    SchemaError,
    SchemaViolation,
    UnknownSession,
)
from .feedback import CritiqueMode, issue_dict
from .harness import build_report
from .jsonutil import canonical_json
from .model import context_from_dict, document_dict, serialize_document
from .patches import patch_dict, preview_patch
from .providers import provider_from_env
from .remediation import suggest_fixes
from .session import (
    SessionStore,
    apply_session_patch,
    create_session,
    handle_chat,
    undo_session,
)

DEFAULT_PORT = 8787

_MODE_ALIASES = {
    "multi": CritiqueMode.MULTI_PERSPECTIVE,
    "multi_perspective": CritiqueMode.MULTI_PERSPECTIVE,
    "unified": CritiqueMode.UNIFIED,
}


def create_app(store: SessionStore | None = None, provider=None) -> FastAPI:
    store = store or SessionStore(os.environ.get("CRITIQ_DATA_DIR", "./critiq-data"))
    provider = provider or provider_from_env()
    app = FastAPI(title="critiq", version=__version__)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(CritiqError)
    async def _critiq_error(request: Request, exc: CritiqError):
        if isinstance(exc, UnknownSession):
            status = 404
        elif isinstance(exc, EmptyHistory):
            status = 409
        elif isinstance(exc, (DocumentSyntaxError, SchemaError, InvalidOp, SchemaViolation)):
            status = 400
        else:
            status = 500
        return JSONResponse(status_code=status, content={"error": str(exc)})

    def _not_found(what: str):
        return JSONResponse(status_code=404, content={"error": what})

    @app.post("/v1/sessions")
    def post_session(payload: dict = Body(...)):
        document = payload.get("document")
        if document is None:
            raise SchemaError("request body requires a 'document' field")
        document_text = document if isinstance(document, str) else json.dumps(document)
        context = context_from_dict(payload.get("context") or {})
        mode_raw = str(payload.get("mode", "multi")).lower()
        if mode_raw not in _MODE_ALIASES:
            raise SchemaError(f"unknown mode {mode_raw!r} (expected multi|unified)")
        session = create_session(document_text, context, _MODE_ALIASES[mode_raw], provider, store)
        return {
            "sessionId": session.sessionId,
            "agenda": agenda_dict(session.agenda),
            "degraded_roles": [r.value for r in session.degradedRoles],
        }

    @app.get("/v1/sessions/{sid}")
    def get_session(sid: str):
        # canonical persisted bytes, so restarts are observably identical
        return Response(content=store.state_text(sid), media_type="application/json")

    @app.get("/v1/sessions/{sid}/agenda")
    def get_agenda(sid: str):
        return agenda_dict(store.get(sid).agenda)

    @app.get("/v1/sessions/{sid}/issues/{issue_id}")
    def get_issue(sid: str, issue_id: str):
        issue = store.get(sid).find_issue(issue_id)
        if issue is None:
            return _not_found(f"no issue {issue_id!r}")
        return issue_dict(issue)

    @app.get("/v1/sessions/{sid}/issues/{issue_id}/remediations")
    def get_remediations(sid: str, issue_id: str):
        session = store.get(sid)
        issue = session.find_issue(issue_id)
        if issue is None:
            return _not_found(f"no issue {issue_id!r}")
        with store.lock(sid):
            options = suggest_fixes(issue, session.document, session.context)
            for option in options:
                session.register_patch(option.patch)
            if issue.proposedPatch is not None:
                session.register_patch(issue.proposedPatch)
            store.save(session)
        return [
            {"patch": patch_dict(o.patch), "explanation": o.explanation, "compliance": o.compliance}
            for o in options
        ]

    @app.post("/v1/sessions/{sid}/chat")
    def post_chat(sid: str, payload: dict = Body(...)):
        session = store.get(sid)
        text = payload.get("text")
        if not isinstance(text, str) or not text.strip():
            raise SchemaError("chat requires a nonempty 'text' field")
        with store.lock(sid):
            reply = handle_chat(session, text, provider, issue_id=payload.get("issueId"))
            store.save(session)
        return {"author": reply.author, "text": reply.text}

    @app.post("/v1/sessions/{sid}/patches/{patch_id}/preview")
    def post_preview(sid: str, patch_id: str):
        session = store.get(sid)
        patch = session.patches.get(patch_id)
        if patch is None:
            return _not_found(f"no patch {patch_id!r}")
        previewed = preview_patch(session.document, patch)
        return {"document": document_dict(previewed)}

    @app.post("/v1/sessions/{sid}/patches/{patch_id}/apply")
    def post_apply(sid: str, patch_id: str):
        session = store.get(sid)
        with store.lock(sid):
            if patch_id not in session.patches:
                return _not_found(f"no patch {patch_id!r}")
            new_doc = apply_session_patch(session, patch_id)
            store.save(session)
        return {"document": document_dict(new_doc), "patchId": patch_id}

    @app.post("/v1/sessions/{sid}/undo")
    def post_undo(sid: str):
        session = store.get(sid)
        with store.lock(sid):
            new_doc = undo_session(session)
            store.save(session)
        return {"document": document_dict(new_doc)}

    @app.get("/v1/sessions/{sid}/document")
    def get_document(sid: str):
        session = store.get(sid)
        return Response(content=serialize_document(session.document), media_type="application/json")

    @app.get("/v1/sessions/{sid}/export")
    def get_export(sid: str, format: str = Query("report")):
        session = store.get(sid)
        if format == "document":
            return Response(content=serialize_document(session.document), media_type="application/json")
        if format != "report":
            raise SchemaError(f"unknown export format {format!r} (expected report|document)")
        report = build_report(session.mode, session.issues(), session.agenda)
        return Response(content=canonical_json(report), media_type="application/json")

    return app


def serve(host: str = "127.0.0.1", port: int | None = None, store: SessionStore | None = None, provider=None):
    import uvicorn

    port = port or int(os.environ.get("CRITIQ_PORT", DEFAULT_PORT))
    uvicorn.run(create_app(store=store, provider=provider), host=host, port=port, log_level="warning")
