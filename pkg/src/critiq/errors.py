"""Exception hierarchy shared across the package."""

from __future__ import annotations


class CritiqError(Exception):
    """Base class for all package errors."""


class DocumentSyntaxError(CritiqError):
    """Input text is not syntactically valid; carries line/column."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{loc}")
        self.line = line
        self.column = column


class SchemaError(CritiqError):
    """Structurally valid input that violates the document schema."""


class DuplicateIdError(SchemaError):
    """Two nodes share an id; names the offending id."""

    def __init__(self, node_id: str):
        super().__init__(f"duplicate node id: {node_id!r}")
        self.node_id = node_id


class ProviderError(CritiqError):
    """Critique provider transport failure or timeout."""


class SchemaViolation(CritiqError):
    """Provider output failed feedback-schema validation after repair."""


class PanelError(CritiqError):
    """One or more panel roles failed; partial results are preserved."""

    def __init__(self, succeeded: dict, failed: dict):
        roles_ok = ", ".join(r.value for r in succeeded) or "none"
        roles_bad = ", ".join(r.value for r in failed)
        super().__init__(f"panel roles failed: {roles_bad} (succeeded: {roles_ok})")
        self.succeeded = succeeded
        self.failed = failed


class DanglingNodeError(CritiqError):
    """An issue references a node id that does not resolve in the document."""

    def __init__(self, node_id: str, issue_id: str = ""):
        detail = f" (issue {issue_id})" if issue_id else ""
        super().__init__(f"issue references unknown node {node_id!r}{detail}")
        self.node_id = node_id


class InvalidOp(CritiqError):
    """Patch op cannot be applied: dangling node, type mismatch, bad index."""


class EmptyHistory(CritiqError):
    """Undo requested on a session with no applied patches."""


class Unfixable(CritiqError):
    """No remediation option can reach compliance."""


class UnknownSession(CritiqError):
    """Session id does not exist in the store."""
