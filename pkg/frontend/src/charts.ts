/** Inline-SVG chart builders: stance pies, the lexicon radar, and the word
 *  cloud. Pure string functions so the test suite can assert on structure
 *  without a browser. All numbers come straight from the API. */

import { STANCE_COLORS } from "./colors.js";
import type { StanceLabel, WordCloud } from "./types.js";

export interface PieSlice {
  label: string;
  value: number;
  color: string;
}

const TAU = Math.PI * 2;

function polar(cx: number, cy: number, r: number, angle: number): [number, number] {
  return [cx + r * Math.sin(angle), cy - r * Math.cos(angle)];
}

function fmtPct(value: number): string {
  return `${(value * 100).toFixed(1)}%`;
}

/** Proportional pie; slices with value 0 are skipped. A single full slice
 *  degenerates to a circle. */
export function pieChart(slices: readonly PieSlice[], size = 120): string {
  const total = slices.reduce((acc, s) => acc + s.value, 0);
  const cx = size / 2;
  const cy = size / 2;
  const r = size / 2 - 4;
  const parts: string[] = [];
  if (total <= 0) {
    parts.push(
      `<circle cx="${cx}" cy="${cy}" r="${r}" fill="#f1f1f1" stroke="#ccc"/>`
    );
  } else {
    let angle = 0;
    for (const slice of slices) {
      if (slice.value <= 0) continue;
      const fraction = slice.value / total;
      const sliceTitle = `${slice.label}: ${fmtPct(slice.value)}`;
      if (fraction >= 0.999999) {
        parts.push(
          `<circle cx="${cx}" cy="${cy}" r="${r}" fill="${slice.color}" data-slice="${slice.label}"><title>${sliceTitle}</title></circle>`
        );
        angle += fraction * TAU;
        continue;
      }
      const next = angle + fraction * TAU;
      const [x0, y0] = polar(cx, cy, r, angle);
      const [x1, y1] = polar(cx, cy, r, next);
      const large = fraction > 0.5 ? 1 : 0;
      parts.push(
        `<path d="M ${cx} ${cy} L ${x0.toFixed(2)} ${y0.toFixed(2)} ` +
          `A ${r} ${r} 0 ${large} 1 ${x1.toFixed(2)} ${y1.toFixed(2)} Z" ` +
          `fill="${slice.color}" data-slice="${slice.label}"><title>${sliceTitle}</title></path>`
      );
      angle = next;
    }
  }
  return (
    `<svg class="pie" viewBox="0 0 ${size} ${size}" width="${size}" height="${size}" role="img">` +
    parts.join("") +
    `</svg>`
  );
}

export function relatednessPie(pRelated: number): string {
  return pieChart([
    { label: "related", value: pRelated, color: "#3b6fb3" },
    { label: "unrelated", value: 1 - pRelated, color: STANCE_COLORS.unrelated },
  ]);
}

export function stancePie(
  conditionals: Record<"agree" | "disagree" | "discuss", number>
): string {
  const labels: StanceLabel[] = ["agree", "disagree", "discuss"];
  return pieChart(
    labels.map((label) => ({
      label,
      value: conditionals[label as "agree" | "disagree" | "discuss"],
      color: STANCE_COLORS[label],
    }))
  );
}

/** Radar chart with one axis per profile score, values in [0, 1] but
 *  rescaled against the max so small lexicon scores stay visible; the
 *  real value rides along in each axis label. */
export function radarChart(scores: Record<string, number>, size = 220): string {
  const names = Object.keys(scores).sort();
  const n = names.length;
  if (n === 0) return `<svg class="radar" viewBox="0 0 ${size} ${size}"></svg>`;
  const cx = size / 2;
  const cy = size / 2;
  const r = size / 2 - 46;
  const peak = Math.max(...names.map((name) => scores[name]), 1e-9);
  const rings = [0.25, 0.5, 0.75, 1.0]
    .map((f) => `<circle cx="${cx}" cy="${cy}" r="${(r * f).toFixed(1)}" class="radar-ring"/>`)
    .join("");
  const axes: string[] = [];
  const points: string[] = [];
  names.forEach((name, i) => {
    const angle = (i / n) * TAU;
    const [ax, ay] = polar(cx, cy, r, angle);
    axes.push(
      `<line x1="${cx}" y1="${cy}" x2="${ax.toFixed(1)}" y2="${ay.toFixed(1)}" class="radar-axis"/>`
    );
    const [lx, ly] = polar(cx, cy, r + 24, angle);
    axes.push(
      `<text x="${lx.toFixed(1)}" y="${ly.toFixed(1)}" text-anchor="middle" class="radar-label" data-axis="${name}">` +
        `${name} ${scores[name].toFixed(3)}</text>`
    );
    const scaled = scores[name] / peak;
    const [px, py] = polar(cx, cy, r * scaled, angle);
    points.push(`${px.toFixed(1)},${py.toFixed(1)}`);
  });
  return (
    `<svg class="radar" viewBox="0 0 ${size} ${size}" width="${size}" height="${size}" role="img">` +
    rings +
    axes.join("") +
    `<polygon points="${points.join(" ")}" class="radar-poly"/>` +
    `</svg>`
  );
}

/** Word cloud: font size is a monotone map of frequency into a fixed
 *  range. Returns spans, not SVG, so the cloud reflows naturally. */
export function wordCloud(cloud: WordCloud, minPx = 13, maxPx = 30): string {
  if (cloud.entries.length === 0) {
    return `<div class="cloud cloud-empty" data-lexicon="${cloud.lexicon}">no cues found</div>`;
  }
  const freqs = cloud.entries.map(([, f]) => f);
  const top = Math.max(...freqs);
  const bottom = Math.min(...freqs);
  const scale = (f: number) =>
    top === bottom ? (minPx + maxPx) / 2 : minPx + ((f - bottom) / (top - bottom)) * (maxPx - minPx);
  const spans = cloud.entries
    .map(
      ([cue, freq]) =>
        `<span class="cloud-word" style="font-size:${scale(freq).toFixed(1)}px" ` +
        `data-cue="${cue}" data-freq="${freq}" title="${cue}: ${freq}">${cue}</span>`
    )
    .join(" ");
  return `<div class="cloud" data-lexicon="${cloud.lexicon}">${spans}</div>`;
}
