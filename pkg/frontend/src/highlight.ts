/** Split a document body into highlight segments from rationale spans.
 *
 * The API guarantees rationale spans are ordered and non-overlapping
 * character ranges into the body. Segmentation maps them bijectively onto
 * highlighted segments: every body character lands in exactly one segment,
 * and each rationale yields exactly one highlighted segment (gap text
 * between spans becomes unhighlighted filler).
 */

import type { Rationale, StanceLabel } from "./types.js";

export interface Segment {
  start: number;
  end: number;
  text: string;
  label: StanceLabel | null; // null: outside every rationale span
  rationaleIndex: number | null;
}

export function segmentBody(body: string, rationales: readonly Rationale[]): Segment[] {
  const ordered = [...rationales].sort((a, b) => a.start - b.start);
  const segments: Segment[] = [];
  let cursor = 0;
  ordered.forEach((rationale, i) => {
    if (rationale.start < cursor || rationale.end > body.length) {
      throw new Error(
        `rationale span ${rationale.start}..${rationale.end} overlaps or escapes the body`
      );
    }
    if (rationale.start > cursor) {
      segments.push({
        start: cursor,
        end: rationale.start,
        text: body.slice(cursor, rationale.start),
        label: null,
        rationaleIndex: null,
      });
    }
    segments.push({
      start: rationale.start,
      end: rationale.end,
      text: body.slice(rationale.start, rationale.end),
      label: rationale.dominant,
      rationaleIndex: i,
    });
    cursor = rationale.end;
  });
  if (cursor < body.length) {
    segments.push({
      start: cursor,
      end: body.length,
      text: body.slice(cursor),
      label: null,
      rationaleIndex: null,
    });
  }
  return segments;
}
