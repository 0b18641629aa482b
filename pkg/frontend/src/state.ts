// View state and its pure transitions. The rendered view is a function
// of (server payloads, ViewState) alone, so a reload rebuilds the same
// screen from server state.

import type { Issue, WireDocument } from "./types.js";

export interface ViewState {
  sessionId: string | null;
  selectedIssueId: string | null;
  highlightedNodeId: string | null;
  previewDocument: WireDocument | null; // present iff a preview is active
  chatDraft: string;
}

export function initialState(): ViewState {
  return {
    sessionId: null,
    selectedIssueId: null,
    highlightedNodeId: null,
    previewDocument: null,
    chatDraft: "",
  };
}

export function withSession(state: ViewState, sessionId: string): ViewState {
  return { ...initialState(), sessionId, chatDraft: state.chatDraft };
}

// Selecting an issue always moves the highlight with it and drops any
// stale preview of a previously selected fix.
export function selectIssue(state: ViewState, issue: Issue): ViewState {
  return {
    ...state,
    selectedIssueId: issue.issueId,
    highlightedNodeId: issue.nodeId,
    previewDocument: null,
  };
}

export function clearSelection(state: ViewState): ViewState {
  return { ...state, selectedIssueId: null, highlightedNodeId: null, previewDocument: null };
}

export function enterPreview(state: ViewState, doc: WireDocument): ViewState {
  return { ...state, previewDocument: doc };
}

export function exitPreview(state: ViewState): ViewState {
  return { ...state, previewDocument: null };
}

export function setDraft(state: ViewState, chatDraft: string): ViewState {
  return { ...state, chatDraft };
}

export function prefixMention(state: ViewState, mention: string): ViewState {
  if (state.chatDraft.startsWith(mention)) return state;
  const rest = state.chatDraft.replace(/^@\w+\s*/, "");
  return { ...state, chatDraft: `${mention} ${rest}`.trimEnd() + (rest ? "" : " ") };
}

// The canvas must show the preview when one is active, else the session
// document.
export function activeDocument(state: ViewState, sessionDocument: WireDocument | null): WireDocument | null {
  return state.previewDocument ?? sessionDocument;
}

export function isPreviewActive(state: ViewState): boolean {
  return state.previewDocument !== null;
}
