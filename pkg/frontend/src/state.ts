import type { AskResponse, StageFailure } from "./types.js";

export type InputMode = "nl" | "ir";
export type TabId = "search" | "results" | "ir" | "sparql" | "sql";

export const TABS: { id: TabId; title: string }[] = [
  { id: "search", title: "Search" },
  { id: "results", title: "Results" },
  { id: "ir", title: "Intermediate Representation" },
  { id: "sparql", title: "SPARQL" },
  { id: "sql", title: "SQL" },
];

export interface AppState {
  mode: InputMode;
  activeTab: TabId;
  busy: boolean;
  seq: number; // id of the newest request; older responses are stale
  response: AskResponse | null;
  failure: StageFailure | null;
}

export function initialState(): AppState {
  return {
    mode: "nl",
    activeTab: "search",
    busy: false,
    seq: 0,
    response: null,
    failure: null,
  };
}

export function setMode(state: AppState, mode: InputMode): AppState {
  return { ...state, mode };
}

export function setTab(state: AppState, tab: TabId): AppState {
  return { ...state, activeTab: tab };
}

/** Start a request: bumps the sequence number and blocks resubmission. */
export function beginRequest(state: AppState): AppState {
  return { ...state, busy: true, failure: null, seq: state.seq + 1 };
}

/** Apply a response; responses for superseded requests are discarded. */
export function applyResponse(
  state: AppState,
  seq: number,
  response: AskResponse,
): AppState {
  if (seq !== state.seq) {
    return state;
  }
  return {
    ...state,
    busy: false,
    response,
    failure: null,
    activeTab: "results",
  };
}

export function applyFailure(
  state: AppState,
  seq: number,
  failure: StageFailure,
): AppState {
  if (seq !== state.seq) {
    return state;
  }
  return { ...state, busy: false, failure, activeTab: "search" };
}
