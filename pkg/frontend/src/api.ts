/** Thin fetch client. Same-origin by default; set window.FAKTA_API_BASE
 *  (e.g. "http://127.0.0.1:8080") when developing against a separate
 *  backend process. Document fetches take an AbortSignal so navigation
 *  can cancel them. */

import type { CheckResponse, DocumentResponse, StanceLabel } from "./types.js";

declare global {
  interface Window {
    FAKTA_API_BASE?: string;
  }
}

function base(): string {
  return (typeof window !== "undefined" && window.FAKTA_API_BASE) || "";
}

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let detail = response.statusText;
  try {
    const body = await response.json();
    if (body && typeof body.error === "string") detail = body.error;
  } catch {
    /* non-JSON error body */
  }
  return new ApiError(response.status, detail);
}

export async function checkClaim(claim: string): Promise<CheckResponse> {
  const response = await fetch(`${base()}/api/check`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ claim }),
  });
  // 502 still carries a partial result (media channels down, wikipedia up)
  if (!response.ok && response.status !== 502) {
    throw await parseError(response);
  }
  return (await response.json()) as CheckResponse;
}

export async function fetchDocument(
  docId: string,
  claimId: string,
  sort: StanceLabel | null,
  signal?: AbortSignal
): Promise<DocumentResponse> {
  const params = new URLSearchParams({ claim_id: claimId });
  if (sort) params.set("sort", sort);
  const response = await fetch(
    `${base()}/api/document/${encodeURIComponent(docId)}?${params}`,
    { signal }
  );
  if (!response.ok) throw await parseError(response);
  return (await response.json()) as DocumentResponse;
}
