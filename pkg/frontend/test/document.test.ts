import { describe, expect, it } from "vitest";
import { renderDocument } from "../src/render.js";
import { sortRationales } from "../src/sort.js";
import type { DocumentResponse } from "../src/types.js";
import documentFixture from "../fixtures/document_response.json";

const doc = documentFixture as unknown as DocumentResponse;

describe("renderDocument", () => {
  const html = renderDocument(doc);

  it("renders one highlight per rationale, bijective with API spans", () => {
    const marks = html.match(/<mark class="seg seg-\w+" data-start="(\d+)" data-end="(\d+)"/g) ?? [];
    expect(marks).toHaveLength(doc.rationales.length);
    const spans = marks
      .map((m) => {
        const match = /data-start="(\d+)" data-end="(\d+)"/.exec(m)!;
        return `${match[1]}..${match[2]}`;
      })
      .sort();
    expect(spans).toEqual(doc.rationales.map((r) => `${r.start}..${r.end}`).sort());
  });

  it("renders both stance pie charts", () => {
    const pies = html.match(/<svg class="pie"/g) ?? [];
    expect(pies.length).toBe(2);
    expect(html).toContain('data-slice="related"');
    expect(html).toContain('data-slice="agree"');
  });

  it("renders the radar chart with one axis per profile score", () => {
    const axes = Object.keys(doc.profile.scores);
    expect(axes).toHaveLength(4);
    for (const axis of axes) {
      expect(html).toContain(`data-axis="${axis}"`);
    }
  });

  it("renders a word cloud panel per lexicon", () => {
    for (const cloud of doc.word_clouds) {
      expect(html).toContain(`data-lexicon="${cloud.lexicon}"`);
    }
    for (const [cue, freq] of doc.word_clouds.flatMap((c) => c.entries)) {
      expect(html).toContain(`data-cue="${cue}" data-freq="${freq}"`);
    }
  });

  it("orders rationale cards by the sort label, highlights unchanged", () => {
    const sorted = renderDocument(doc, "disagree");
    const cardOrder = [...sorted.matchAll(/<li class="rationale rationale-\w+" data-start="(\d+)"/g)].map(
      (m) => Number(m[1])
    );
    const expected = sortRationales(doc.rationales, "disagree").map((r) => r.start);
    expect(cardOrder).toEqual(expected);
    // highlighting stays in document order regardless of sorting
    const markOrder = [...sorted.matchAll(/<mark class="seg seg-\w+" data-start="(\d+)"/g)].map(
      (m) => Number(m[1])
    );
    expect(markOrder).toEqual([...markOrder].sort((a, b) => a - b));
  });

  it("marks the active sort button", () => {
    const sorted = renderDocument(doc, "agree");
    expect(sorted).toMatch(/class="sort-btn active" data-sort="agree"/);
  });

  it("renders rationale probabilities verbatim from the payload", () => {
    for (const rationale of doc.rationales) {
      expect(html).toContain(`agree ${rationale.scores.agree.toFixed(3)}`);
    }
  });

  it("escapes document text inside highlights", () => {
    const spiky: DocumentResponse = {
      ...doc,
      body: 'before <b>bold</b> after',
      rationales: [
        {
          start: 7,
          end: 18,
          text: "<b>bold</b>",
          dominant: "agree",
          scores: { agree: 1, disagree: 0, discuss: 0, unrelated: 0 },
        },
      ],
    };
    const spikyHtml = renderDocument(spiky);
    expect(spikyHtml).toContain("&lt;b&gt;bold&lt;/b&gt;");
    expect(spikyHtml).not.toContain("<b>bold</b>");
  });
});
