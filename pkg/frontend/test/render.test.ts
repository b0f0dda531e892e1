import { describe, expect, it } from "vitest";

import {
  formatConfidence,
  renderFailure,
  renderQueryText,
  renderResults,
} from "../src/render.js";
import type { AskResponse } from "../src/types.js";
import movie from "./fixtures/ask_movie.json";

const response = movie as unknown as AskResponse;

describe("renderResults", () => {
  it("shows one section per group with mapping and confidence", () => {
    const root = renderResults(document, response);
    const sections = root.querySelectorAll("section.answer-group");
    expect(sections.length).toBe(response.groups.length);
    const first = sections[0];
    const confidence = first.querySelector(".confidence");
    expect(confidence?.textContent).toBe(
      `confidence ${formatConfidence(response.groups[0].confidence)}`);
    // two decimals display, full precision in the tooltip
    expect(confidence?.getAttribute("title")).toBe(
      String(response.groups[0].confidence));
    const mapping = first.querySelectorAll(".mapping li");
    expect(mapping.length).toBe(response.groups[0].assignment.length);
  });

  it("links every entity answer to its KG page", () => {
    const root = renderResults(document, response);
    const links = Array.from(root.querySelectorAll("a.entity-link"));
    const answers = response.groups.flatMap((g) => g.answers);
    const entityValues = answers.flatMap(
      (a) => a.values.filter((v) => v.type === "entity_id"));
    expect(links.length).toBe(entityValues.length);
    for (const link of links) {
      expect(link.getAttribute("href")).toMatch(/^https:\/\//);
    }
    const labels = links.map((l) => l.textContent ?? "");
    expect(labels.some((t) => t.includes("A Quiet Place"))).toBe(true);
  });

  it("renders an empty notice when there are no groups", () => {
    const root = renderResults(document, { ...response, groups: [] });
    expect(root.querySelector(".empty")?.textContent).toBe("No answers.");
  });
});

describe("renderFailure", () => {
  it("names the stage and draws a caret at the error column", () => {
    const box = renderFailure(document, {
      stage: "parse",
      message: "expected atom, found end of input",
      position: { pos: 2, line: 1, col: 3 },
    }, "X:");
    expect(box.querySelector("strong")?.textContent).toBe("parse error");
    expect(box.querySelector("pre.caret")?.textContent).toBe("X:\n  ^");
  });
});

describe("renderQueryText", () => {
  it("shows the text verbatim with a copy button", () => {
    const wrap = renderQueryText(document, response.sparql, "SPARQL");
    expect(wrap.querySelector("pre")?.textContent).toBe(response.sparql);
    expect(wrap.querySelector("button.copy")?.textContent).toBe("Copy SPARQL");
  });
});
