import { ApiError, ask } from "./api.js";
import { renderGraphSvg } from "./graph.js";
import {
  renderFailure,
  renderQueryText,
  renderResults,
  renderTimings,
} from "./render.js";
import {
  AppState,
  applyFailure,
  applyResponse,
  beginRequest,
  initialState,
  setMode,
  setTab,
  TABS,
  TabId,
} from "./state.js";

let state: AppState = initialState();

function $(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node;
}

function update(next: AppState): void {
  state = next;
  render();
}

function render(): void {
  // tab bar
  const bar = $("tabs");
  bar.replaceChildren();
  for (const tab of TABS) {
    const button = document.createElement("button");
    button.textContent = tab.title;
    button.className = tab.id === state.activeTab ? "tab active" : "tab";
    button.addEventListener("click", () => update(setTab(state, tab.id)));
    bar.appendChild(button);
  }

  for (const tab of TABS) {
    $(`panel-${tab.id}`).hidden = tab.id !== state.activeTab;
  }

  // search panel widgets
  const submit = $("submit") as HTMLButtonElement;
  submit.disabled = state.busy;
  submit.textContent = state.busy ? "Asking…" : "Ask";
  (document.querySelector(
    `input[name="mode"][value="${state.mode}"]`,
  ) as HTMLInputElement | null)?.toggleAttribute("checked", true);

  const failureBox = $("failure");
  failureBox.replaceChildren();
  if (state.failure) {
    const attempted = (($("question") as HTMLTextAreaElement).value) || "";
    failureBox.appendChild(renderFailure(document, state.failure, attempted));
  }

  renderStages();
}

function renderStages(): void {
  const r = state.response;
  $("panel-results").replaceChildren();
  $("panel-ir").replaceChildren();
  $("panel-sparql").replaceChildren();
  $("panel-sql").replaceChildren();
  if (!r) return;

  const results = $("panel-results");
  results.appendChild(renderResults(document, r));
  results.appendChild(renderTimings(document, r.timings));

  const irPanel = $("panel-ir");
  irPanel.appendChild(renderQueryText(document, r.ir, "IR"));
  irPanel.appendChild(renderGraphSvg(document, r.query_graph));

  $("panel-sparql").appendChild(renderQueryText(document, r.sparql, "SPARQL"));
  $("panel-sql").appendChild(renderQueryText(document, r.sql, "SQL"));
}

async function submitQuestion(): Promise<void> {
  if (state.busy) return;
  const text = ($("question") as HTMLTextAreaElement).value.trim();
  if (!text) return;
  const next = beginRequest(state);
  const seq = next.seq;
  update(next);
  try {
    const body = state.mode === "ir" ? { ir: text } : { nl: text };
    const response = await ask(body);
    update(applyResponse(state, seq, response));
  } catch (error) {
    const failure = error instanceof ApiError
      ? { stage: error.stage, message: error.message, position: error.position }
      : { stage: "network", message: String(error) };
    update(applyFailure(state, seq, failure));
  }
}

export function boot(): void {
  $("submit").addEventListener("click", () => void submitQuestion());
  $("question").addEventListener("keydown", (event) => {
    const key = event as KeyboardEvent;
    if (key.key === "Enter" && (key.ctrlKey || key.metaKey)) {
      void submitQuestion();
    }
  });
  for (const radio of document.querySelectorAll('input[name="mode"]')) {
    radio.addEventListener("change", (event) => {
      const value = (event.target as HTMLInputElement).value;
      update(setMode(state, value === "ir" ? "ir" : "nl"));
    });
  }
  render();
}

if (typeof document !== "undefined" && document.getElementById("tabs")) {
  boot();
}
