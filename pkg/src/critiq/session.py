"""Critique sessions: creation, @-routed chat, patch lifecycle, persistence.

Sessions are persisted as one canonical JSON file each, so a service
restart reproduces byte-identical state. Mutations on a session are
serialized by a per-session lock; reads share freely.
"""

from __future__ import annotations

import json
import re
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .coordinator import CritiqueAgenda, agenda_dict, agenda_from_dict, compose_agenda
from .errors import PanelError, UnknownSession
from .feedback import (
    PANEL_ROLES,
    ROLE_DISPLAY,
    CritiqueMode,
    Issue,
    Role,
    RoleFeedback,
    feedback_dict,
    feedback_from_dict,
)
from .jsonutil import canonical_json
from .model import (
    DesignContext,
    DesignDocument,
    context_dict,
    context_from_dict,
    document_dict,
    parse_document,
    serialize_document,
)
from .patches import History, Patch, apply_patch, patch_dict, patch_from_dict
from .perspectives import run_panel

USER_AUTHOR = "user"

_ROLE_NOUN = {
    Role.USER_EXPERIENCE: "user-experience",
    Role.PRODUCT_VISION: "product-vision",
    Role.ENGINEERING: "engineering",
    Role.UNIFIED: "design",
}

# Mention tokens, longest alternative first so @UserExperience beats @UX's
# prefix and @Engineering matches before @Eng.
_MENTION = re.compile(
    r"@(userexperience|ux|productvision|product|pm|engineering|engineer|eng)\b",
    re.IGNORECASE,
)

_MENTION_ROLE = {
    "ux": Role.USER_EXPERIENCE,
    "userexperience": Role.USER_EXPERIENCE,
    "pm": Role.PRODUCT_VISION,
    "product": Role.PRODUCT_VISION,
    "productvision": Role.PRODUCT_VISION,
    "engineer": Role.ENGINEERING,
    "eng": Role.ENGINEERING,
    "engineering": Role.ENGINEERING,
}


def route_message(text: str) -> Role:
    """First @-mention in reading order wins; no mention goes to the coordinator."""
    match = _MENTION.search(text)
    if match is None:
        return Role.COORDINATOR
    return _MENTION_ROLE[match.group(1).lower()]


@dataclass
class ChatTurn:
    author: str  # USER_AUTHOR or a Role value
    text: str
    referencedIssueId: str | None = None
    timestamp: str = ""

    def to_dict(self) -> dict:
        out = {"author": self.author, "text": self.text, "timestamp": self.timestamp}
        if self.referencedIssueId:
            out["referencedIssueId"] = self.referencedIssueId
        return out

    @classmethod
    def from_dict(cls, raw: dict) -> "ChatTurn":
        return cls(
            author=raw["author"],
            text=raw["text"],
            referencedIssueId=raw.get("referencedIssueId"),
            timestamp=raw.get("timestamp", ""),
        )


@dataclass
class Session:
    sessionId: str
    mode: CritiqueMode
    document: DesignDocument
    context: DesignContext
    feedbacks: list[RoleFeedback]
    agenda: CritiqueAgenda
    chat: list[ChatTurn] = field(default_factory=list)
    history: History = field(default_factory=History)
    createdAt: str = ""
    degradedRoles: list[Role] = field(default_factory=list)
    patches: dict[str, Patch] = field(default_factory=dict)

    def issues(self) -> list[Issue]:
        return [issue for fb in self.feedbacks for issue in fb.issues]

    def find_issue(self, issue_id: str) -> Issue | None:
        for issue in self.issues():
            if issue.issueId == issue_id:
                return issue
        return None

    def register_patch(self, patch: Patch) -> None:
        self.patches[patch.patchId] = patch

    def recompose_agenda(self) -> None:
        """Agenda must stay consistent with feedbacks after any change."""
        self.agenda = compose_agenda(self.feedbacks, self.document, self.context)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def create_session(
    document_text: str,
    context: DesignContext,
    mode: CritiqueMode,
    provider,
    store: "SessionStore | None" = None,
) -> Session:
    """Parse, run the panel, compose the agenda, persist.

    A partially failed panel degrades instead of failing: the agenda is
    built from the roles that succeeded and the failures are recorded.
    """
    doc = parse_document(document_text)
    degraded: list[Role] = []
    try:
        feedbacks = run_panel(doc, context, mode, provider)
    except PanelError as e:
        roles = list(PANEL_ROLES) if mode is CritiqueMode.MULTI_PERSPECTIVE else [Role.UNIFIED]
        feedbacks = [e.succeeded[r] for r in roles if r in e.succeeded]
        degraded = [r for r in roles if r in e.failed]
    agenda = compose_agenda(feedbacks, doc, context)
    session = Session(
        sessionId=uuid.uuid4().hex[:12],
        mode=mode,
        document=doc,
        context=context,
        feedbacks=feedbacks,
        agenda=agenda,
        createdAt=_now(),
        degradedRoles=degraded,
    )
    for issue in session.issues():
        if issue.proposedPatch is not None:
            session.register_patch(issue.proposedPatch)
    if store is not None:
        store.save(session)
    return session


# ---------------------------------------------------------------------------
# Chat


def _mentioned_node_ids(session: Session, text: str) -> set[str]:
    lowered = text.lower()
    hits = set()
    from .model import walk

    for node, _ in walk(session.document):
        if node.id.lower() in lowered or (node.name and node.name.lower() in lowered):
            hits.add(node.id)
    return hits


def _issue_citation(issue: Issue) -> str:
    cite = issue.description
    if issue.remediation.specificSuggestion and issue.remediation.specificSuggestion != issue.description:
        cite += f" Suggested: {issue.remediation.specificSuggestion}"
    return cite


def _role_reply(session: Session, target: Role, text: str, issue_id: str | None) -> str:
    source = target
    if session.mode is CritiqueMode.UNIFIED:
        source = Role.UNIFIED  # one expert answers for every lens
    issues = [i for i in session.issues() if i.sourceRole is source]
    display = ROLE_DISPLAY[target]

    if issue_id:
        focus = [i for i in issues if i.issueId == issue_id] or [
            i for i in session.issues() if i.issueId == issue_id
        ]
        if focus:
            return f"{display}: {_issue_citation(focus[0])} {focus[0].rationale}"
    mentioned = _mentioned_node_ids(session, text)
    if mentioned:
        on_nodes = [i for i in issues if i.nodeId in mentioned]
        if on_nodes:
            return f"{display}: {_issue_citation(on_nodes[0])} {on_nodes[0].rationale}"
    if not issues:
        return (
            f"{display}: I reviewed {session.document.name!r} and found no "
            f"{_ROLE_NOUN[source]} issues. Happy to look at any specific element."
        )
    head = issues[0]
    more = f" ({len(issues) - 1} more on my list.)" if len(issues) > 1 else ""
    return f"{display}: {_issue_citation(head)} {head.rationale}{more}"


def _coordinator_reply(session: Session) -> str:
    agenda = session.agenda
    if not agenda.items:
        return (
            f"{ROLE_DISPLAY[Role.COORDINATOR]}: the panel found nothing blocking in "
            f"{session.document.name!r} (score {agenda.overallScore}/10). What would you like to explore?"
        )
    top = agenda.items[0]
    return (
        f"{ROLE_DISPLAY[Role.COORDINATOR]}: we logged {len(agenda.items)} theme(s); the one to start "
        f"with is {top.title} ({top.priority.value}). Overall score {agenda.overallScore}/10. "
        f"Mention @UX, @PM, or @Engineer to dig into a specific perspective."
    )


def handle_chat(session: Session, text: str, provider, issue_id: str | None = None) -> ChatTurn:
    """Append the user turn, route, and append the (deterministic or remote) reply."""
    session.chat.append(ChatTurn(author=USER_AUTHOR, text=text, referencedIssueId=issue_id, timestamp=_now()))
    target = route_message(text)
    if target is Role.COORDINATOR:
        reply_text = _coordinator_reply(session)
        author = Role.COORDINATOR.value
    else:
        reply_text = _reply_via_provider(session, target, text, issue_id, provider)
        author = (Role.UNIFIED if session.mode is CritiqueMode.UNIFIED else target).value
    reply = ChatTurn(author=author, text=reply_text, referencedIssueId=issue_id, timestamp=_now())
    session.chat.append(reply)
    return reply


def _reply_via_provider(session: Session, target: Role, text: str, issue_id: str | None, provider) -> str:
    from .providers import DeterministicProvider

    if isinstance(provider, DeterministicProvider) or provider is None:
        return _role_reply(session, target, text, issue_id)
    # Remote providers get the role prompt plus the running conversation.
    from .errors import ProviderError
    from .perspectives import render_role_prompt
    from .providers import ProviderRequest

    role = Role.UNIFIED if session.mode is CritiqueMode.UNIFIED else target
    history = tuple((turn.author, turn.text) for turn in session.chat)
    request = ProviderRequest(
        role=role,
        prompt=render_role_prompt(role, session.context),
        document_json=serialize_document(session.document),
        context_json=canonical_json(context_dict(session.context)),
        history=history,
    )
    try:
        response = provider.complete(request)
    except ProviderError as e:
        return f"[error] {ROLE_DISPLAY[target]} is unavailable: {e}"
    return response.raw_text


# ---------------------------------------------------------------------------
# Persistence


def session_state_dict(session: Session) -> dict:
    return {
        "sessionId": session.sessionId,
        "mode": session.mode.value,
        "createdAt": session.createdAt,
        "document": document_dict(session.document),
        "context": context_dict(session.context),
        "feedbacks": [feedback_dict(fb) for fb in session.feedbacks],
        "agenda": agenda_dict(session.agenda),
        "chat": [turn.to_dict() for turn in session.chat],
        "history": [
            {"patch": patch_dict(p), "inverse": patch_dict(inv)} for p, inv in session.history.entries()
        ],
        "patches": {pid: patch_dict(p) for pid, p in session.patches.items()},
        "degraded_roles": [r.value for r in session.degradedRoles],
    }


def session_from_dict(raw: dict) -> Session:
    doc = parse_document(canonical_json(raw["document"]))
    return Session(
        sessionId=raw["sessionId"],
        mode=CritiqueMode(raw["mode"]),
        document=doc,
        context=context_from_dict(raw["context"]),
        feedbacks=[feedback_from_dict(fb) for fb in raw["feedbacks"]],
        agenda=agenda_from_dict(raw["agenda"]),
        chat=[ChatTurn.from_dict(t) for t in raw["chat"]],
        history=History(
            [(patch_from_dict(h["patch"]), patch_from_dict(h["inverse"])) for h in raw["history"]]
        ),
        createdAt=raw["createdAt"],
        degradedRoles=[Role(r) for r in raw["degraded_roles"]],
        patches={pid: patch_from_dict(p) for pid, p in raw["patches"].items()},
    )


class SessionStore:
    """File-backed store: one canonical JSON document per session."""

    def __init__(self, data_dir: str | Path):
        self.root = Path(data_dir) / "sessions"
        self.root.mkdir(parents=True, exist_ok=True)
        self._cache: dict[str, Session] = {}
        self._locks: dict[str, threading.RLock] = {}
        self._store_lock = threading.Lock()

    def lock(self, session_id: str) -> threading.RLock:
        with self._store_lock:
            return self._locks.setdefault(session_id, threading.RLock())

    def save(self, session: Session) -> None:
        text = canonical_json(session_state_dict(session))
        path = self.root / f"{session.sessionId}.json"
        tmp = path.with_suffix(".tmp")
        tmp.write_text(text, encoding="utf-8")
        tmp.replace(path)
        self._cache[session.sessionId] = session

    def get(self, session_id: str) -> Session:
        if session_id in self._cache:
            return self._cache[session_id]
        path = self.root / f"{session_id}.json"
        if not path.exists():
            raise UnknownSession(f"no session {session_id!r}")
        session = session_from_dict(json.loads(path.read_text(encoding="utf-8")))
        self._cache[session_id] = session
        return session

    def state_text(self, session_id: str) -> str:
        """The canonical serialized state, as persisted."""
        return canonical_json(session_state_dict(self.get(session_id)))

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self.root.glob("*.json"))


# ---------------------------------------------------------------------------
# Session mutations (used by the HTTP service and tests)


def apply_session_patch(session: Session, patch_id: str) -> DesignDocument:
    patch = session.patches.get(patch_id)
    if patch is None:
        raise UnknownSession(f"no patch {patch_id!r} in session {session.sessionId}")
    new_doc, inverse = apply_patch(session.document, patch)
    session.document = new_doc
    session.history.push(patch, inverse)
    return new_doc


def undo_session(session: Session) -> DesignDocument:
    _, inverse = session.history.pop()
    new_doc, _ = apply_patch(session.document, inverse)
    session.document = new_doc
    return new_doc
