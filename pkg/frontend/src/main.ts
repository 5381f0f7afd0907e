/** DOM bootstrap: renders the current state into #app and wires events.
 *  One in-flight check at a time; switching views aborts a pending
 *  document fetch. */

import { ApiError, checkClaim, fetchDocument } from "./api.js";
import { renderDocument, renderEntry, renderError, renderOverview } from "./render.js";
import {
  ViewState,
  backToOverview,
  initialState,
  showDocument,
  showOverview,
  withSort,
} from "./state.js";
import type { StanceLabel } from "./types.js";

let state: ViewState = initialState();
let docFetch: AbortController | null = null;

function app(): HTMLElement {
  const node = document.getElementById("app");
  if (!node) throw new Error("#app container missing");
  return node;
}

function render(): void {
  const root = app();
  let html: string;
  if (state.view === "entry") {
    html = renderEntry(state.claim, state.busy);
  } else if (state.view === "overview" && state.check) {
    html = renderOverview(state.check);
  } else if (state.view === "document" && state.document) {
    html = renderDocument(state.document, state.sortLabel);
  } else {
    html = renderEntry(state.claim, state.busy);
  }
  if (state.error) html = renderError(state.error) + html;
  root.innerHTML = html;
  wire(root);
}

function wire(root: HTMLElement): void {
  const form = root.querySelector<HTMLFormElement>("#claim-form");
  const input = root.querySelector<HTMLInputElement>("#claim-input");
  const submit = root.querySelector<HTMLButtonElement>("#claim-submit");
  if (form && input && submit) {
    input.addEventListener("input", () => {
      submit.disabled = input.value.trim().length === 0 || state.busy;
    });
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void submitClaim(input.value);
    });
  }
  root.querySelectorAll<HTMLButtonElement>(".doc-link").forEach((button) => {
    button.addEventListener("click", () => {
      const docId = button.dataset.docId;
      if (docId) void openDocument(docId);
    });
  });
  root.querySelector("#back-to-entry")?.addEventListener("click", () => {
    state = { ...initialState(), claim: state.claim };
    render();
  });
  root.querySelector("#back-to-overview")?.addEventListener("click", () => {
    docFetch?.abort();
    state = backToOverview(state);
    render();
  });
  root.querySelectorAll<HTMLButtonElement>(".sort-btn").forEach((button) => {
    button.addEventListener("click", () => {
      const label = button.dataset.sort as StanceLabel;
      reorderRationales(label);
    });
  });
  root.querySelector("#retry")?.addEventListener("click", () => {
    state = { ...state, error: null };
    if (state.view === "entry" && state.claim.trim()) {
      void submitClaim(state.claim);
    } else {
      render();
    }
  });
}

async function submitClaim(claim: string): Promise<void> {
  if (state.busy || claim.trim().length === 0) return;
  state = { ...state, claim, busy: true, error: null };
  render();
  try {
    const check = await checkClaim(claim.trim());
    state = showOverview(state, check);
  } catch (error) {
    const message =
      error instanceof ApiError && error.status === 400
        ? `invalid claim: ${error.message}`
        : `check failed: ${error instanceof Error ? error.message : String(error)}`;
    state = { ...state, busy: false, error: message };
  }
  render();
}

async function openDocument(docId: string): Promise<void> {
  if (!state.check) return;
  docFetch?.abort();
  docFetch = new AbortController();
  try {
    const doc = await fetchDocument(
      docId,
      state.check.claim_id,
      null,
      docFetch.signal
    );
    state = showDocument(state, docId, doc);
  } catch (error) {
    if (error instanceof DOMException && error.name === "AbortError") return;
    const message =
      error instanceof ApiError && error.status === 404
        ? "document no longer available; please re-run the check"
        : `document fetch failed: ${error instanceof Error ? error.message : String(error)}`;
    state = { ...backToOverview(state), error: message };
  }
  render();
}

/** Client-side re-ordering: reuses the scores already on screen, so the
 *  highlighting (document order) never changes. */
function reorderRationales(label: StanceLabel): void {
  if (!state.document) return;
  const next = label === state.sortLabel ? null : label;
  state = withSort(state, next);
  render();
}

document.addEventListener("DOMContentLoaded", render);
