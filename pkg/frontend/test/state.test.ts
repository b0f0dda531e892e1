import { describe, expect, it } from "vitest";

import {
  applyFailure,
  applyResponse,
  beginRequest,
  initialState,
  setMode,
  setTab,
} from "../src/state.js";
import type { AskResponse } from "../src/types.js";
import movie from "./fixtures/ask_movie.json";

const response = movie as unknown as AskResponse;

describe("request lifecycle", () => {
  it("blocks resubmission while busy and lands on the results tab", () => {
    let s = beginRequest(initialState());
    expect(s.busy).toBe(true);
    s = applyResponse(s, s.seq, response);
    expect(s.busy).toBe(false);
    expect(s.response).toBe(response);
    expect(s.activeTab).toBe("results");
  });

  it("discards stale responses by sequence number", () => {
    let s = beginRequest(initialState()); // seq 1
    s = beginRequest(s); // seq 2 supersedes
    const afterStale = applyResponse(s, 1, response);
    expect(afterStale).toBe(s);
    expect(afterStale.response).toBeNull();
    const afterFresh = applyResponse(s, 2, response);
    expect(afterFresh.response).toBe(response);
  });

  it("discards stale failures too", () => {
    let s = beginRequest(initialState());
    s = beginRequest(s);
    const stale = applyFailure(s, 1, { stage: "parse", message: "nope" });
    expect(stale.failure).toBeNull();
    const fresh = applyFailure(s, 2, { stage: "parse", message: "nope" });
    expect(fresh.failure?.stage).toBe("parse");
    expect(fresh.activeTab).toBe("search");
  });
});

describe("ui state", () => {
  it("preserves the input mode across submissions", () => {
    let s = setMode(initialState(), "ir");
    s = beginRequest(s);
    s = applyResponse(s, s.seq, response);
    expect(s.mode).toBe("ir");
  });

  it("switches tabs", () => {
    const s = setTab(initialState(), "sparql");
    expect(s.activeTab).toBe("sparql");
  });
});
