/** View-state machine: entry -> overview -> document and back.
 *
 * The document view is only reachable with a document selected from the
 * current overview; leaving the document view clears the selection and the
 * rationale sort label.
 */

import type { CheckResponse, DocumentResponse, StanceLabel } from "./types.js";

export type ViewName = "entry" | "overview" | "document";

export interface ViewState {
  view: ViewName;
  claim: string;
  check: CheckResponse | null;
  selectedDocId: string | null;
  document: DocumentResponse | null;
  sortLabel: StanceLabel | null;
  busy: boolean;
  error: string | null;
}

export function initialState(): ViewState {
  return {
    view: "entry",
    claim: "",
    check: null,
    selectedDocId: null,
    document: null,
    sortLabel: null,
    busy: false,
    error: null,
  };
}

export function showOverview(state: ViewState, check: CheckResponse): ViewState {
  return {
    ...state,
    view: "overview",
    check,
    claim: check.claim,
    selectedDocId: null,
    document: null,
    sortLabel: null,
    busy: false,
    error: null,
  };
}

export function showDocument(
  state: ViewState,
  docId: string,
  doc: DocumentResponse
): ViewState {
  if (state.check === null) {
    throw new Error("document view requires a prior overview");
  }
  const known = state.check.channels.some((ch) =>
    ch.documents.some((d) => d.doc_id === docId)
  );
  if (!known) {
    throw new Error(`doc ${docId} is not part of the current results`);
  }
  return {
    ...state,
    view: "document",
    selectedDocId: docId,
    document: doc,
    sortLabel: null,
    busy: false,
    error: null,
  };
}

export function backToOverview(state: ViewState): ViewState {
  return {
    ...state,
    view: state.check ? "overview" : "entry",
    selectedDocId: null,
    document: null,
    sortLabel: null,
    error: null,
  };
}

export function withSort(state: ViewState, label: StanceLabel | null): ViewState {
  return { ...state, sortLabel: label };
}
