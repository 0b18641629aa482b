// Wire types for the critiq HTTP API.

export interface WireColor {
  r: number;
  g: number;
  b: number;
  a: number;
}

export interface WireBounds {
  x: number;
  y: number;
  w: number;
  h: number;
}

export type NodeType = "FRAME" | "TEXT" | "VECTOR" | "RECTANGLE" | "IMAGE" | "COMPONENT";

export interface WireNode {
  id: string;
  name: string;
  type: NodeType;
  bounds: WireBounds;
  fills: { type: "SOLID"; color: WireColor }[];
  strokes: { color: WireColor; weight: number }[];
  text?: { characters: string; fontSize: number; fontWeight: number; fontFamily: string };
  children?: WireNode[];
}

export interface WireDocument {
  schemaVersion: number;
  name: string;
  frames: WireNode[];
}

export interface Conflict {
  conflicting_roles: string[];
  node_id: string;
  property: string;
  conflict_description: string;
  tradeoff_question: string;
}

export interface AgendaItem {
  priority: "critical" | "high" | "medium" | "low";
  title: string;
  component_group: string;
  affected_roles: string[];
  issue_ids: string[];
  issue_summary: string;
  recommendation: string;
  conflicts: Conflict[];
  estimated_effort: "low" | "medium" | "high";
}

export interface Agenda {
  conversational_opening: string;
  overall_score: number;
  agenda_items: AgendaItem[];
  conflicts_to_surface: Conflict[];
  positive_highlights: string[];
  next_conversation_points: string[];
}

export interface Issue {
  issueId: string;
  sourceRole: string;
  nodeId: string;
  nodeName: string;
  elementType: NodeType;
  issueType: string;
  severity: string;
  description: string;
  rationale: string;
  remediation: { action: string; specificSuggestion: string; technicalSolution: string };
  proposedPatch?: unknown;
}

export interface RemediationOption {
  patch: { patchId: string; label: string; ops: unknown[] };
  explanation: string;
  compliance: Record<string, number | string>;
}

export interface ChatReply {
  author: string;
  text: string;
}

export interface CreateSessionResponse {
  sessionId: string;
  agenda: Agenda;
  degraded_roles: string[];
}

export interface ContextInput {
  productGoal: string;
  brandKeywords: string[];
  themeColor?: string;
  targetUsers: string;
}
