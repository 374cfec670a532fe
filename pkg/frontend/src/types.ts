/** Payload shapes of the registry-graph HTTP API, as consumed by the panels. */

export type NodeLabel = "Company" | "Person" | "Event" | "NameHub";

export interface Candidate {
  uid: string;
  name: string;
  label: NodeLabel;
  strength?: string | null;
  location?: string | null;
  [extra: string]: unknown;
}

export interface SearchResponse {
  query: string;
  count: number;
  candidates: Candidate[];
}

export interface AssociateRow {
  uid: string;
  name: string;
  label: NodeLabel;
  role?: string | null;
  via?: string | null;
  date?: string | null;
}

export interface HistoryRow {
  uid: string;
  date?: string | null;
  rubric?: string | null;
  location?: string | null;
  via?: string | null;
  role?: string | null;
  [extra: string]: unknown;
}

export interface Dossier {
  uid: string;
  name: string;
  label: NodeLabel;
  strength?: string | null;
  profile: Record<string, unknown>;
  personnel: AssociateRow[];
  affiliations: AssociateRow[];
  events: HistoryRow[];
}

export interface NetworkRow {
  uid: string;
  name: string;
  label: NodeLabel;
  strength?: string | null;
  location?: string | null;
  kind?: string | null;
  role?: string | null;
  date?: string | null;
  /** uid of the event node mediating this relationship, when there is one */
  via?: string | null;
  branch?: string | null;
}

export interface ToolPayload {
  tool: string;
  status: "success" | "empty" | "error";
  summary: string;
  rows: Record<string, unknown>[];
}

/** One retrieval step of a finished turn, as reported in the answer frame. */
export interface TraceStep {
  tool: string;
  arguments: Record<string, unknown>;
  status: string;
  summary: string;
  row_count: number;
}

export interface TraceFrame {
  type: "trace";
  kind: "route" | "tool" | "state" | "synthesis";
  detail: string;
  args_digest?: string;
}

export interface AnswerFrame {
  type: "answer";
  session_id: string;
  turn_id: string;
  answer: string;
  state: string;
  trace: TraceStep[];
  events: { kind: string; detail: string; args_digest?: string }[];
  model_calls: number;
}

export interface ErrorFrame {
  type: "error";
  stage?: string;
  detail?: string;
  session_id?: string;
}

export type ChatFrame = TraceFrame | AnswerFrame | ErrorFrame;
