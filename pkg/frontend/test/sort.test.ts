import { describe, expect, it } from "vitest";
import { sortRationales } from "../src/sort.js";
import type { DocumentResponse, Rationale, StanceLabel } from "../src/types.js";
import documentFixture from "../fixtures/document_response.json";

const doc = documentFixture as unknown as DocumentResponse;

function rationale(scores: Partial<Record<StanceLabel, number>>, text: string): Rationale {
  return {
    start: 0,
    end: text.length,
    text,
    dominant: "agree",
    scores: {
      agree: scores.agree ?? 0,
      disagree: scores.disagree ?? 0,
      discuss: scores.discuss ?? 0,
      unrelated: scores.unrelated ?? 0,
    },
  };
}

describe("sortRationales", () => {
  it("sorts by the requested probability field, descending", () => {
    for (const label of ["agree", "disagree", "discuss", "unrelated"] as StanceLabel[]) {
      const sorted = sortRationales(doc.rationales, label);
      const values = sorted.map((r) => r.scores[label]);
      const expected = [...values].sort((a, b) => b - a);
      expect(values).toEqual(expected);
    }
  });

  it("uses exactly the fixture's probability values (fixture sanity)", () => {
    const sorted = sortRationales(doc.rationales, "disagree");
    const fixtureValues = doc.rationales.map((r) => r.scores.disagree).sort((a, b) => b - a);
    expect(sorted.map((r) => r.scores.disagree)).toEqual(fixtureValues);
  });

  it("is stable on ties", () => {
    const a = rationale({ agree: 0.5 }, "first");
    const b = rationale({ agree: 0.5 }, "second");
    const c = rationale({ agree: 0.9 }, "third");
    expect(sortRationales([a, b, c], "agree").map((r) => r.text)).toEqual([
      "third",
      "first",
      "second",
    ]);
  });

  it("sorting twice by the same label is idempotent", () => {
    const once = sortRationales(doc.rationales, "agree");
    const twice = sortRationales(once, "agree");
    expect(twice).toEqual(once);
  });

  it("empty input is a no-op", () => {
    expect(sortRationales([], "discuss")).toEqual([]);
  });

  it("does not mutate the input array", () => {
    const original = [...doc.rationales];
    sortRationales(doc.rationales, "unrelated");
    expect(doc.rationales).toEqual(original);
  });
});
