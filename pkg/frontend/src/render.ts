/** Pure HTML renderers for the three views. Every number shown is read
 *  directly off the API payload; the only client-side computation is
 *  re-ordering (sort.ts) and span segmentation (highlight.ts). */

import { radarChart, relatednessPie, stancePie, wordCloud } from "./charts.js";
import { STANCE_ORDER } from "./colors.js";
import { segmentBody } from "./highlight.js";
import { sortRationales } from "./sort.js";
import type {
  ChannelResult,
  CheckResponse,
  DocumentResponse,
  Rationale,
  StanceLabel,
  StanceScores,
} from "./types.js";

export function escapeHtml(raw: string): string {
  return raw
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

const CHANNEL_TITLES: Record<string, string> = {
  wikipedia: "Wikipedia",
  high: "High factuality media",
  mixed: "Mixed factuality media",
  low: "Low factuality media",
};

function stanceBadges(scores: StanceScores): string {
  return STANCE_ORDER.map(
    (label) =>
      `<span class="badge badge-${label}" data-label="${label}">` +
      `${label} ${scores.flattened[label].toFixed(2)}</span>`
  ).join("");
}

// -- entry view -------------------------------------------------------------

export function renderEntry(claim = "", busy = false): string {
  const disabled = claim.trim().length === 0 || busy ? "disabled" : "";
  return `
  <section class="entry">
    <h1>Check a claim</h1>
    <form id="claim-form">
      <input id="claim-input" type="text" placeholder="Type a claim to verify"
             value="${escapeHtml(claim)}" autocomplete="off"/>
      <button id="claim-submit" type="submit" ${disabled}>${busy ? "Checking…" : "Check"}</button>
    </form>
    <p class="hint">The engine searches four source-reliability channels and
    aggregates document stances into a SUP / REF / NEI verdict.</p>
  </section>`;
}

// -- overview view ----------------------------------------------------------

function renderChannelPanel(channel: ChannelResult): string {
  const title = CHANNEL_TITLES[channel.channel] ?? channel.channel;
  let headline: string;
  if (channel.error !== null) {
    headline = `<span class="chip chip-error" title="${escapeHtml(channel.error)}">channel failed</span>`;
  } else if (channel.aggregate === null) {
    headline = `<span class="chip chip-empty">no results</span>`;
  } else {
    headline = `<div class="aggregate" data-channel="${channel.channel}">${stanceBadges(
      channel.aggregate
    )}</div>`;
  }
  const docs = channel.documents
    .map(
      (doc) => `
      <li class="doc-row">
        <button class="doc-link" data-doc-id="${escapeHtml(doc.doc_id)}">
          ${escapeHtml(doc.title || doc.doc_id)}
        </button>
        <span class="doc-meta">#${doc.rank} · ${escapeHtml(doc.source_domain)}</span>
        <span class="doc-stance stance-${doc.stance.dominant}"
              title="score_init ${doc.score_init.toFixed(3)}">
          ${doc.stance.dominant} ${doc.stance.flattened[doc.stance.dominant].toFixed(2)}
        </span>
      </li>`
    )
    .join("");
  const placeholder =
    channel.error === null && channel.documents.length === 0
      ? `<li class="doc-row doc-placeholder">no documents retrieved</li>`
      : "";
  return `
  <article class="channel" data-channel="${channel.channel}">
    <header>
      <h3>${title}</h3>
      ${headline}
    </header>
    <ul class="doc-list">${docs}${placeholder}</ul>
  </article>`;
}

export function renderOverview(check: CheckResponse): string {
  const v = check.verdict;
  const channels = check.channels.map(renderChannelPanel).join("");
  const diagnostics = check.diagnostics.length
    ? `<p class="diagnostics">${check.diagnostics.map(escapeHtml).join(" · ")}</p>`
    : "";
  return `
  <section class="overview">
    <header class="verdict-banner verdict-${v.label}">
      <span class="verdict-label">${v.label}</span>
      <span class="verdict-scores">
        agree ${v.agree_score.toFixed(3)} ·
        disagree ${v.disagree_score.toFixed(3)} ·
        discuss ${v.discuss_score.toFixed(3)}
        (basis: ${v.basis_channel})
      </span>
    </header>
    <p class="claim-echo">“${escapeHtml(check.claim)}” — query:
      <code>${check.query.terms.map(escapeHtml).join(" ")}</code></p>
    ${diagnostics}
    <div class="channel-grid">${channels}</div>
    <button id="back-to-entry" class="back">← new claim</button>
  </section>`;
}

// -- document view ----------------------------------------------------------

function renderHighlights(doc: DocumentResponse): string {
  const segments = segmentBody(doc.body, doc.rationales);
  return segments
    .map((segment) => {
      const text = escapeHtml(segment.text);
      if (segment.label === null) return `<span class="seg">${text}</span>`;
      return (
        `<mark class="seg seg-${segment.label}" data-start="${segment.start}" ` +
        `data-end="${segment.end}">${text}</mark>`
      );
    })
    .join("");
}

function renderRationaleCards(
  rationales: readonly Rationale[],
  sortLabel: StanceLabel | null
): string {
  const ordered = sortLabel === null ? [...rationales] : sortRationales(rationales, sortLabel);
  return ordered
    .map(
      (rationale) => `
      <li class="rationale rationale-${rationale.dominant}" data-start="${rationale.start}">
        <span class="rationale-text">${escapeHtml(rationale.text)}</span>
        <span class="rationale-scores">
          ${STANCE_ORDER.map(
            (label) =>
              `<span data-label="${label}" class="${sortLabel === label ? "sort-key" : ""}">` +
              `${label} ${rationale.scores[label].toFixed(3)}</span>`
          ).join(" ")}
        </span>
      </li>`
    )
    .join("");
}

export function renderDocument(
  doc: DocumentResponse,
  sortLabel: StanceLabel | null = null
): string {
  const sortButtons = STANCE_ORDER.map(
    (label) =>
      `<button class="sort-btn ${sortLabel === label ? "active" : ""}" data-sort="${label}">` +
      `${label}</button>`
  ).join("");
  const clouds = doc.word_clouds.map((cloud) => wordCloud(cloud)).join("");
  return `
  <section class="document">
    <button id="back-to-overview" class="back">← results</button>
    <h2>${escapeHtml(doc.title || doc.doc_id)}</h2>
    <p class="doc-meta">
      ${escapeHtml(doc.source_domain)} · rank #${doc.rank} ·
      score ${doc.score_init.toFixed(3)}${doc.f_rank !== null ? ` · re-rank ${doc.f_rank.toFixed(3)}` : ""}
      · channel ${doc.channel}
    </p>
    <div class="doc-columns">
      <div class="doc-charts">
        <figure>
          <figcaption>related vs unrelated</figcaption>
          ${relatednessPie(doc.stance.p_related)}
        </figure>
        <figure>
          <figcaption>stance (given related)</figcaption>
          ${stancePie(doc.stance.conditionals)}
        </figure>
        <figure>
          <figcaption>linguistic profile</figcaption>
          ${radarChart(doc.profile.scores)}
        </figure>
        <figure>
          <figcaption>cue word clouds</figcaption>
          ${clouds}
        </figure>
      </div>
      <div class="doc-main">
        <div class="doc-body" id="doc-body">${renderHighlights(doc)}</div>
        <div class="rationale-controls">order rationales by: ${sortButtons}</div>
        <ul class="rationale-list" id="rationale-list">
          ${renderRationaleCards(doc.rationales, sortLabel)}
        </ul>
      </div>
    </div>
  </section>`;
}

export function renderError(message: string, retryable = true): string {
  return `
  <div class="banner banner-error">
    <span>${escapeHtml(message)}</span>
    ${retryable ? `<button id="retry">retry</button>` : ""}
  </div>`;
}
