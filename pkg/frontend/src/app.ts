// DOM wiring for the studio. All rendering goes through pure helpers in
// render.ts/state.ts; this file owns fetching, events, and the 1s poll.

import { ApiClient, ApiError } from "./api.js";
import { displayList, drawToCanvas } from "./render.js";
import {
  ViewState,
  activeDocument,
  enterPreview,
  exitPreview,
  initialState,
  isPreviewActive,
  prefixMention,
  selectIssue,
  setDraft,
  withSession,
} from "./state.js";
import type { Agenda, Issue, RemediationOption, WireDocument } from "./types.js";

const $ = <T extends HTMLElement>(id: string) => document.getElementById(id) as T;

let api = new ApiClient(inferBaseUrl());
let state: ViewState = initialState();
let sessionDocument: WireDocument | null = null;
let agenda: Agenda | null = null;
let loadedDocument: WireDocument | null = null;
let selectedIssue: Issue | null = null;
let options: RemediationOption[] = [];
let chatLog: { author: string; text: string }[] = [];
let mutationInFlight = false;
let pollTimer: number | null = null;

function inferBaseUrl(): string {
  const params = new URLSearchParams(location.search);
  return params.get("api") ?? "http://127.0.0.1:8787";
}

function showError(message: string) {
  const banner = $("error-banner");
  banner.textContent = message;
  banner.classList.remove("hidden");
  window.setTimeout(() => banner.classList.add("hidden"), 6000);
}

async function guard<T>(work: () => Promise<T>): Promise<T | undefined> {
  try {
    return await work();
  } catch (e) {
    showError(e instanceof ApiError ? e.message : String(e));
    return undefined;
  }
}

// one mutation at a time; buttons grey out while in flight
async function mutate<T>(work: () => Promise<T>): Promise<T | undefined> {
  if (mutationInFlight) return undefined;
  mutationInFlight = true;
  document.body.classList.add("busy");
  try {
    return await guard(work);
  } finally {
    mutationInFlight = false;
    document.body.classList.remove("busy");
  }
}

// ---------------------------------------------------------------------------
// Rendering

function redrawCanvas() {
  const doc = activeDocument(state, sessionDocument) ?? loadedDocument;
  const canvas = $("canvas") as unknown as HTMLCanvasElement;
  if (!doc) return;
  const result = displayList(doc, state.highlightedNodeId);
  drawToCanvas(canvas, result);
  $("render-warnings").textContent = result.warnings.length
    ? `${result.warnings.length} node(s) rendered as plain boxes`
    : "";
  $("preview-flag").classList.toggle("hidden", !isPreviewActive(state));
}

function renderAgenda() {
  const panel = $("agenda-items");
  panel.innerHTML = "";
  if (!agenda) return;
  $("agenda-opening").textContent = agenda.conversational_opening;
  $("agenda-score").textContent = `${agenda.overall_score}/10`;
  for (const item of agenda.agenda_items) {
    const el = document.createElement("div");
    el.className = `agenda-item priority-${item.priority}`;
    el.innerHTML = `
      <div class="item-title">${escapeHtml(item.title)}</div>
      <div class="item-meta">${item.priority} · ${item.issue_ids.length} issue(s) · effort ${item.estimated_effort}${item.conflicts.length ? " · trade-off" : ""}</div>
    `;
    el.addEventListener("click", () => void onSelectAgendaItem(item.issue_ids[0] ?? null));
    panel.appendChild(el);
  }
  const highlights = agenda.positive_highlights.map((h) => `<li>${escapeHtml(h)}</li>`).join("");
  $("agenda-highlights").innerHTML = highlights ? `<ul>${highlights}</ul>` : "";
}

function renderIssuePanel() {
  const panel = $("issue-panel");
  if (!selectedIssue) {
    panel.classList.add("hidden");
    return;
  }
  panel.classList.remove("hidden");
  $("issue-title").textContent = `${selectedIssue.severity.toUpperCase()} · ${selectedIssue.nodeName}`;
  $("issue-description").textContent = selectedIssue.description;
  $("issue-rationale").textContent = selectedIssue.rationale;
  const list = $("remediation-options");
  list.innerHTML = "";
  for (const option of options) {
    const row = document.createElement("div");
    row.className = "option-row";
    const compliance = Object.entries(option.compliance)
      .map(([k, v]) => `${k}=${v}`)
      .join(" ");
    row.innerHTML = `
      <div class="option-label">${escapeHtml(option.patch.label)}</div>
      <div class="option-compliance">${escapeHtml(compliance)}</div>
    `;
    const previewBtn = button("Preview", () => void onPreview(option));
    const applyBtn = button("Apply", () => void onApply(option));
    row.append(previewBtn, applyBtn);
    list.appendChild(row);
  }
  $("exit-preview").classList.toggle("hidden", !isPreviewActive(state));
}

function renderChat() {
  const log = $("chat-log");
  log.innerHTML = "";
  for (const turn of chatLog) {
    const el = document.createElement("div");
    el.className = `chat-turn author-${turn.author === "user" ? "user" : "role"}`;
    el.innerHTML = `<span class="chat-author">${escapeHtml(turn.author)}</span> ${escapeHtml(turn.text)}`;
    log.appendChild(el);
  }
  log.scrollTop = log.scrollHeight;
  ($("chat-input") as HTMLInputElement).value = state.chatDraft;
}

function renderAll() {
  redrawCanvas();
  renderAgenda();
  renderIssuePanel();
  renderChat();
}

function button(label: string, onClick: () => void): HTMLButtonElement {
  const b = document.createElement("button");
  b.textContent = label;
  b.addEventListener("click", onClick);
  return b;
}

function escapeHtml(text: string): string {
  const el = document.createElement("span");
  el.textContent = text;
  return el.innerHTML;
}

// ---------------------------------------------------------------------------
// Actions

async function onStart() {
  if (!loadedDocument) {
    showError("Load a design document first.");
    return;
  }
  const keywords = ($("ctx-keywords") as HTMLInputElement).value
    .split(",")
    .map((s) => s.trim())
    .filter(Boolean);
  const theme = ($("ctx-theme") as HTMLInputElement).value.trim();
  const context = {
    productGoal: ($("ctx-goal") as HTMLInputElement).value,
    brandKeywords: keywords,
    ...(theme ? { themeColor: theme } : {}),
    targetUsers: ($("ctx-users") as HTMLInputElement).value,
  };
  const mode = ($("mode-select") as HTMLSelectElement).value;
  const created = await mutate(() => api.createSession(loadedDocument!, context, mode));
  if (!created) return;
  state = withSession(state, created.sessionId);
  agenda = created.agenda;
  chatLog = [];
  selectedIssue = null;
  options = [];
  sessionDocument = await guard(() => api.getDocument(created.sessionId)) ?? null;
  if (created.degraded_roles.length) {
    showError(`Some roles failed: ${created.degraded_roles.join(", ")} (agenda is partial)`);
  }
  startPolling();
  renderAll();
}

async function onSelectAgendaItem(issueId: string | null) {
  if (!issueId || !state.sessionId) return;
  const issue = await guard(() => api.getIssue(state.sessionId!, issueId));
  if (!issue) return;
  selectedIssue = issue;
  state = selectIssue(state, issue);
  options = (await guard(() => api.getRemediations(state.sessionId!, issueId))) ?? [];
  renderAll();
}

async function onPreview(option: RemediationOption) {
  if (!state.sessionId) return;
  const result = await guard(() => api.previewPatch(state.sessionId!, option.patch.patchId));
  if (!result) return;
  state = enterPreview(state, result.document);
  renderAll();
}

async function onApply(option: RemediationOption) {
  if (!state.sessionId) return;
  const result = await mutate(() => api.applyPatch(state.sessionId!, option.patch.patchId));
  if (!result) return;
  state = exitPreview(state);
  sessionDocument = result.document;
  renderAll();
}

async function onUndo() {
  if (!state.sessionId) return;
  const result = await mutate(() => api.undo(state.sessionId!));
  if (!result) return;
  state = exitPreview(state);
  sessionDocument = result.document;
  renderAll();
}

async function onSendChat() {
  const text = ($("chat-input") as HTMLInputElement).value.trim();
  if (!text || !state.sessionId) return;
  chatLog.push({ author: "user", text });
  state = setDraft(state, "");
  renderChat();
  const reply = await mutate(() =>
    api.chat(state.sessionId!, text, state.selectedIssueId ?? undefined),
  );
  if (reply) chatLog.push(reply);
  renderChat();
}

function onLoadFile(input: HTMLInputElement) {
  const file = input.files?.[0];
  if (!file) return;
  void file.text().then((text) => {
    try {
      loadedDocument = JSON.parse(text) as WireDocument;
      sessionDocument = null;
      state = initialState();
      agenda = null;
      $("doc-name").textContent = loadedDocument.name ?? file.name;
      renderAll();
    } catch (e) {
      showError(`Not a JSON document: ${e}`);
    }
  });
}

// Chat replies and applied patches land server-side; a 1s poll keeps the
// canvas honest without push machinery.
function startPolling() {
  if (pollTimer !== null) window.clearInterval(pollTimer);
  pollTimer = window.setInterval(() => {
    if (!state.sessionId || mutationInFlight) return;
    void api
      .getDocument(state.sessionId)
      .then((doc) => {
        if (JSON.stringify(doc) !== JSON.stringify(sessionDocument)) {
          sessionDocument = doc;
          redrawCanvas();
        }
      })
      .catch(() => undefined); // poll errors are transient; surfaced on user actions
  }, 1000);
}

export function boot() {
  $("start-session").addEventListener("click", () => void onStart());
  $("undo-button").addEventListener("click", () => void onUndo());
  $("chat-send").addEventListener("click", () => void onSendChat());
  $("exit-preview").addEventListener("click", () => {
    state = exitPreview(state);
    renderAll();
  });
  ($("chat-input") as HTMLInputElement).addEventListener("input", (e) => {
    state = setDraft(state, (e.target as HTMLInputElement).value);
  });
  ($("chat-input") as HTMLInputElement).addEventListener("keydown", (e) => {
    if (e.key === "Enter") void onSendChat();
  });
  for (const [id, mention] of [
    ["mention-ux", "@UX"],
    ["mention-pm", "@PM"],
    ["mention-eng", "@Engineer"],
  ] as const) {
    $(id).addEventListener("click", () => {
      state = prefixMention(state, mention);
      renderChat();
      ($("chat-input") as HTMLInputElement).focus();
    });
  }
  ($("file-input") as HTMLInputElement).addEventListener("change", (e) =>
    onLoadFile(e.target as HTMLInputElement),
  );
  $("api-base").textContent = api.baseUrl;
  renderAll();
}

boot();
