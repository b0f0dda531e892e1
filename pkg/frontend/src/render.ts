// DOM builders for the Results / SPARQL / SQL panels. Everything shown
// comes straight from the AskResponse; the only client-side computation is
// number formatting.

import type { AnswerGroup, AskResponse, StageFailure } from "./types.js";

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function formatConfidence(value: number): string {
  return value.toFixed(2);
}

function renderGroup(doc: Document, group: AnswerGroup, index: number): HTMLElement {
  const section = el(doc, "section", "answer-group");

  const heading = el(doc, "header", "group-heading");
  const confidence = el(doc, "span", "confidence",
    `confidence ${formatConfidence(group.confidence)}`);
  confidence.title = String(group.confidence);
  heading.appendChild(el(doc, "h3", undefined, `Group ${index + 1}`));
  heading.appendChild(confidence);
  section.appendChild(heading);

  const mapping = el(doc, "ul", "mapping");
  for (const entry of group.assignment) {
    const item = el(doc, "li");
    item.appendChild(el(doc, "span", "keyword", entry.keyword));
    item.appendChild(el(doc, "span", "arrow", " → "));
    const target = el(doc, "span", "candidate",
      `${entry.label} (${entry.id}, ${entry.score.toFixed(2)})`);
    target.title = String(entry.score);
    item.appendChild(target);
    mapping.appendChild(item);
  }
  section.appendChild(mapping);

  const table = el(doc, "table", "answers");
  const body = doc.createElement("tbody");
  for (const answer of group.answers) {
    const row = doc.createElement("tr");
    for (const value of answer.values) {
      const cell = doc.createElement("td");
      if (value.type === "entity_id" && value.url) {
        const link = el(doc, "a", "entity-link",
          `${value.label ?? value.value} (${value.value})`);
        link.setAttribute("href", value.url);
        link.setAttribute("target", "_blank");
        link.setAttribute("rel", "noopener");
        cell.appendChild(link);
      } else {
        cell.textContent = String(value.value);
      }
      row.appendChild(cell);
    }
    body.appendChild(row);
  }
  table.appendChild(body);
  section.appendChild(table);
  return section;
}

export function renderResults(doc: Document, response: AskResponse): HTMLElement {
  const container = el(doc, "div", "results");
  if (response.groups.length === 0) {
    container.appendChild(el(doc, "p", "empty", "No answers."));
    return container;
  }
  response.groups.forEach((group, i) => {
    container.appendChild(renderGroup(doc, group, i));
  });
  return container;
}

export function renderFailure(doc: Document, failure: StageFailure,
                              attempted: string): HTMLElement {
  const box = el(doc, "div", "failure");
  box.appendChild(el(doc, "strong", undefined, `${failure.stage} error`));
  box.appendChild(el(doc, "p", "message", failure.message));
  if (failure.position && attempted) {
    // caret line pointing at the offending column
    const lines = attempted.split("\n");
    const line = lines[Math.min(failure.position.line, lines.length) - 1] ?? "";
    const caret = " ".repeat(Math.max(failure.position.col - 1, 0)) + "^";
    box.appendChild(el(doc, "pre", "caret", `${line}\n${caret}`));
  }
  return box;
}

export function renderQueryText(doc: Document, text: string,
                                label: string): HTMLElement {
  const wrap = el(doc, "div", "query-text");
  const button = el(doc, "button", "copy", `Copy ${label}`);
  button.addEventListener("click", () => {
    void navigator.clipboard?.writeText(text);
  });
  wrap.appendChild(button);
  wrap.appendChild(el(doc, "pre", undefined, text));
  return wrap;
}

export function renderTimings(doc: Document,
                              timings: Record<string, number>): HTMLElement {
  const list = el(doc, "ul", "timings");
  for (const [stage, seconds] of Object.entries(timings)) {
    list.appendChild(el(doc, "li", undefined,
      `${stage}: ${(seconds * 1000).toFixed(1)} ms`));
  }
  return list;
}
