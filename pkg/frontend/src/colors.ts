/** Fixed stance palette; unrelated stays neutral. Colors chosen for
 *  readable contrast against the light highlight backgrounds. */

import type { StanceLabel } from "./types.js";

export const STANCE_COLORS: Record<StanceLabel, string> = {
  agree: "#1b7f3b",
  disagree: "#b3261e",
  discuss: "#8a6d00",
  unrelated: "#5f6368",
};

export const STANCE_FILLS: Record<StanceLabel, string> = {
  agree: "#d3efdb",
  disagree: "#f8d7d4",
  discuss: "#f4e9c3",
  unrelated: "#ececec",
};

export const STANCE_ORDER: StanceLabel[] = [
  "agree",
  "disagree",
  "discuss",
  "unrelated",
];

export const VERDICT_COLORS: Record<string, string> = {
  SUP: STANCE_COLORS.agree,
  REF: STANCE_COLORS.disagree,
  NEI: STANCE_COLORS.unrelated,
};
