/** Canned payloads mirroring the service's wire shapes. */

import type {
  Candidate,
  Dossier,
  NetworkRow,
  SearchResponse,
  ToolPayload,
  TraceStep,
} from "../src/types.js";
import type { CenterEntity } from "../src/network.js";

// --- the 3-node neighborhood: company -> event -> person ---------------

export const ALPINE_CENTER: CenterEntity = {
  uid: "co-alpine",
  name: "Alpine Trust AG",
  label: "Company",
};

export const THREE_NODE_ROWS: NetworkRow[] = [
  {
    uid: "p-weber",
    name: "Hans Weber",
    label: "Person",
    strength: "CORE",
    location: null,
    kind: "HR01",
    role: "signatory",
    date: "2024-03-05",
    via: "evt-1",
    branch: null,
  },
];

// --- search -------------------------------------------------------------

export const SEARCH_CANDIDATES: Candidate[] = [
  {
    uid: "co-alpine",
    name: "Alpine Trust AG",
    label: "Company",
    strength: "CORE",
    location: "Geneva",
    match: "name",
    distance: 0,
  },
  {
    uid: "p-weber",
    name: "Hans Weber",
    label: "Person",
    strength: "CORE",
    location: null,
    match: "name",
    distance: 2,
  },
];

export function searchResponse(query: string, candidates: Candidate[]): SearchResponse {
  return { query, count: candidates.length, candidates };
}

// --- dossiers -----------------------------------------------------------

export const ALPINE_DOSSIER: Dossier = {
  uid: "co-alpine",
  name: "Alpine Trust AG",
  label: "Company",
  strength: "CORE",
  profile: {
    name: "Alpine Trust AG",
    location: "Geneva",
    purpose: "asset management",
    nominal_capital: 100000,
  },
  personnel: [
    {
      uid: "p-weber",
      name: "Hans Weber",
      label: "Person",
      role: "signatory",
      via: "evt-1",
      date: "2024-03-05",
    },
  ],
  affiliations: [
    {
      uid: "co-beta",
      name: "Beta Holding SA",
      label: "Company",
      role: "acquirer",
      via: "evt-2",
      date: "2024-05-01",
    },
  ],
  events: [
    { uid: "evt-1", date: "2024-03-05", rubric: "HR01", location: "Geneva", via: null, role: null },
  ],
};

export const WEBER_DOSSIER: Dossier = {
  uid: "p-weber",
  name: "Hans Weber",
  label: "Person",
  strength: "CORE",
  profile: { name: "Hans Weber" },
  personnel: [],
  affiliations: [
    {
      uid: "co-alpine",
      name: "Alpine Trust AG",
      label: "Company",
      role: "signatory",
      via: "evt-1",
      date: "2024-03-05",
    },
  ],
  events: [
    { uid: "evt-1", date: "2024-03-05", rubric: "HR01", location: "Geneva", via: null, role: "signatory" },
  ],
};

export const BETA_DOSSIER: Dossier = {
  uid: "co-beta",
  name: "Beta Holding SA",
  label: "Company",
  strength: "CORE",
  profile: { name: "Beta Holding SA", location: "Zurich", nominal_capital: 250000 },
  personnel: [],
  affiliations: [],
  events: [],
};

export function networkPayload(rows: NetworkRow[]): ToolPayload {
  return {
    tool: "explore_network",
    status: rows.length > 0 ? "success" : "empty",
    summary: `${rows.length} connected entities`,
    rows: rows as unknown as Record<string, unknown>[],
  };
}

export function historyPayload(dossier: Dossier): ToolPayload {
  return {
    tool: "get_node_history",
    status: dossier.events.length > 0 ? "success" : "empty",
    summary: `${dossier.events.length} events`,
    rows: dossier.events as unknown as Record<string, unknown>[],
  };
}

// --- chat frames ----------------------------------------------------------

export function toolFrame(tool: string, status = "success"): Record<string, unknown> {
  return { type: "trace", kind: "tool", detail: `${tool}:${status}`, args_digest: "0123456789ab" };
}

export function routeFrame(intent: string): Record<string, unknown> {
  return { type: "trace", kind: "route", detail: intent, args_digest: "" };
}

export function stateFrame(transition: string): Record<string, unknown> {
  return { type: "trace", kind: "state", detail: transition, args_digest: "" };
}

export function synthesisFrame(chars: number): Record<string, unknown> {
  return { type: "trace", kind: "synthesis", detail: `${chars} chars`, args_digest: "" };
}

export function step(
  tool: string,
  args: Record<string, unknown> = {},
  status = "success",
  summary = "done",
  rowCount = 1,
): TraceStep {
  return { tool, arguments: args, status, summary, row_count: rowCount };
}

let turnCounter = 0;

export function answerFrame(options: {
  answer?: string;
  state?: string;
  trace?: TraceStep[];
  session?: string;
  modelCalls?: number;
} = {}): Record<string, unknown> {
  turnCounter++;
  return {
    type: "answer",
    session_id: options.session ?? "sess-1",
    turn_id: `turn-${turnCounter}`,
    answer: options.answer ?? "Done.",
    state: options.state ?? "S1",
    trace: options.trace ?? [],
    events: [],
    model_calls: options.modelCalls ?? 2,
  };
}

export function errorFrame(stage: string, detail: string): Record<string, unknown> {
  return { type: "error", stage, detail, session_id: "sess-1" };
}
