import { describe, expect, it } from "vitest";

import {
  activeDocument,
  enterPreview,
  exitPreview,
  initialState,
  isPreviewActive,
  prefixMention,
  selectIssue,
  withSession,
} from "../src/state.js";
import type { Issue, WireDocument } from "../src/types.js";

const issue: Issue = {
  issueId: "UX-t1-CONTRAST_TEXT",
  sourceRole: "user_experience",
  nodeId: "t1",
  nodeName: "title",
  elementType: "TEXT",
  issueType: "contrast_text",
  severity: "high",
  description: "low contrast",
  rationale: "hard to read",
  remediation: { action: "", specificSuggestion: "", technicalSolution: "" },
};

const someDoc = { schemaVersion: 1, name: "D", frames: [] } as WireDocument;
const otherDoc = { schemaVersion: 1, name: "E", frames: [] } as WireDocument;

describe("ViewState invariants", () => {
  it("highlight always follows the selected issue's node", () => {
    const s = selectIssue(initialState(), issue);
    expect(s.selectedIssueId).toBe(issue.issueId);
    expect(s.highlightedNodeId).toBe(issue.nodeId);
  });

  it("previewDocument present iff a preview is active", () => {
    let s = initialState();
    expect(isPreviewActive(s)).toBe(false);
    s = enterPreview(s, someDoc);
    expect(isPreviewActive(s)).toBe(true);
    expect(s.previewDocument).toBe(someDoc);
    s = exitPreview(s);
    expect(isPreviewActive(s)).toBe(false);
    expect(s.previewDocument).toBeNull();
  });

  it("selecting another issue drops a stale preview", () => {
    let s = enterPreview(selectIssue(initialState(), issue), someDoc);
    s = selectIssue(s, { ...issue, issueId: "UX-t2", nodeId: "t2" });
    expect(s.previewDocument).toBeNull();
    expect(s.highlightedNodeId).toBe("t2");
  });

  it("active document prefers the preview", () => {
    const s = enterPreview(initialState(), otherDoc);
    expect(activeDocument(s, someDoc)).toBe(otherDoc);
    expect(activeDocument(exitPreview(s), someDoc)).toBe(someDoc);
  });

  it("new session resets selection and preview", () => {
    let s = enterPreview(selectIssue(initialState(), issue), someDoc);
    s = withSession(s, "abc");
    expect(s.sessionId).toBe("abc");
    expect(s.selectedIssueId).toBeNull();
    expect(s.previewDocument).toBeNull();
  });

  it("mention buttons prefix the draft once", () => {
    let s = { ...initialState(), chatDraft: "why is this slow" };
    s = prefixMention(s, "@Engineer");
    expect(s.chatDraft).toBe("@Engineer why is this slow");
    s = prefixMention(s, "@UX");
    expect(s.chatDraft).toBe("@UX why is this slow");
  });
});
