// Thin client over the session HTTP API. Every request lands in
// `requestLog`, which the tests use to prove that preview-only flows
// never touch the apply endpoint. Mutating calls are never retried.

import type {
  Agenda,
  ChatReply,
  ContextInput,
  CreateSessionResponse,
  Issue,
  RemediationOption,
  WireDocument,
} from "./types.js";

export interface LoggedRequest {
  method: string;
  path: string;
}

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  requestLog: LoggedRequest[] = [];

  constructor(public baseUrl: string) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    this.requestLog.push({ method, path });
    const resp = await fetch(this.baseUrl + path, {
      method,
      headers: body !== undefined ? { "Content-Type": "application/json" } : undefined,
      body: body !== undefined ? JSON.stringify(body) : undefined,
    });
    const text = await resp.text();
    if (!resp.ok) {
      let detail = text;
      try {
        detail = JSON.parse(text).error ?? text;
      } catch {
        // non-JSON error body, keep raw text
      }
      throw new ApiError(resp.status, `${method} ${path}: ${detail}`);
    }
    return JSON.parse(text) as T;
  }

  createSession(document: WireDocument, context: ContextInput, mode: string) {
    return this.request<CreateSessionResponse>("POST", "/v1/sessions", {
      document,
      context,
      mode,
    });
  }

  getAgenda(sid: string) {
    return this.request<Agenda>("GET", `/v1/sessions/${sid}/agenda`);
  }

  getIssue(sid: string, issueId: string) {
    return this.request<Issue>("GET", `/v1/sessions/${sid}/issues/${issueId}`);
  }

  getRemediations(sid: string, issueId: string) {
    return this.request<RemediationOption[]>(
      "GET",
      `/v1/sessions/${sid}/issues/${issueId}/remediations`,
    );
  }

  chat(sid: string, text: string, issueId?: string) {
    const body: Record<string, string> = { text };
    if (issueId) body.issueId = issueId;
    return this.request<ChatReply>("POST", `/v1/sessions/${sid}/chat`, body);
  }

  previewPatch(sid: string, patchId: string) {
    return this.request<{ document: WireDocument }>(
      "POST",
      `/v1/sessions/${sid}/patches/${patchId}/preview`,
    );
  }

  applyPatch(sid: string, patchId: string) {
    return this.request<{ document: WireDocument }>(
      "POST",
      `/v1/sessions/${sid}/patches/${patchId}/apply`,
    );
  }

  undo(sid: string) {
    return this.request<{ document: WireDocument }>("POST", `/v1/sessions/${sid}/undo`);
  }

  getDocument(sid: string) {
    return this.request<WireDocument>("GET", `/v1/sessions/${sid}/document`);
  }
}
