"""critiq: multi-perspective design critique engine with remediation patches."""

__version__ = "0.1.0"

from .analyzers import Finding, RuleConfig, RuleId, contrast_ratio, relative_luminance, run_rules
from .coordinator import CritiqueAgenda, compose_agenda, detect_conflicts, overall_score, prioritize, thematize
from .feedback import CritiqueMode, Issue, Role, RoleFeedback, Severity
from .model import (
    Bounds,
    Color,
    DesignContext,
    DesignDocument,
    DesignNode,
    NodeKind,
    TextStyle,
    find_node,
    parse_context,
    parse_document,
    serialize_document,
    walk,
)
from .patches import Patch, PatchOp, apply_patch, preview_patch
from .perspectives import critique, render_role_prompt, run_panel
from .providers import DeterministicProvider, RemoteProvider, provider_from_env
from .remediation import RemediationOption, suggest_contrast_fixes, suggest_fixes, suggest_font_fixes, suggest_size_fixes
from .session import ChatTurn, Session, SessionStore, create_session, handle_chat, route_message

__all__ = [name for name in dir() if not name.startswith("_")]
