/** Client-side rationale re-ordering.
 *
 * Reuses the per-sentence probabilities the API already returned; stable,
 * so equal scores keep document order. Sorting an empty list is a no-op.
 */

import type { Rationale, StanceLabel } from "./types.js";

export function sortRationales(
  rationales: readonly Rationale[],
  label: StanceLabel
): Rationale[] {
  return rationales
    .map((rationale, index) => ({ rationale, index }))
    .sort((a, b) => {
      const diff = b.rationale.scores[label] - a.rationale.scores[label];
      return diff !== 0 ? diff : a.index - b.index;
    })
    .map((entry) => entry.rationale);
}
