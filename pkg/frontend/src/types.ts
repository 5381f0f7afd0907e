/** Shapes of the fact-check API responses (see ../schema/*.schema.json).
 *  The UI renders these fields verbatim: it never computes a score. */

export type StanceLabel = "agree" | "disagree" | "discuss" | "unrelated";
export type ChannelName = "wikipedia" | "high" | "mixed" | "low";
export type VerdictLabel = "SUP" | "REF" | "NEI";

export interface StanceScores {
  p_related: number;
  conditionals: { agree: number; disagree: number; discuss: number };
  flattened: Record<StanceLabel, number>;
  dominant: StanceLabel;
}

export interface Rationale {
  start: number;
  end: number;
  text: string;
  dominant: StanceLabel;
  scores: Record<StanceLabel, number>;
}

export interface WordCloud {
  lexicon: string;
  entries: [string, number][];
}

export interface DocumentResult {
  doc_id: string;
  rank: number;
  score_init: number;
  f_rank: number | null;
  title: string;
  source_domain: string;
  body: string;
  stance: StanceScores;
  rationales: Rationale[];
  profile: { scores: Record<string, number>; doc_token_count: number };
  word_clouds: WordCloud[];
}

export interface ChannelResult {
  channel: ChannelName;
  error: string | null;
  query_terms: string[];
  relaxations: number;
  aggregate: StanceScores | null;
  documents: DocumentResult[];
}

export interface CheckResponse {
  request_id: string;
  claim_id: string;
  claim: string;
  query: { terms: string[]; origins: string[] };
  verdict: {
    label: VerdictLabel;
    agree_score: number;
    disagree_score: number;
    discuss_score: number;
    basis_channel: ChannelName;
  };
  channels: ChannelResult[];
  diagnostics: string[];
  timings?: Record<string, number>;
}

export interface DocumentResponse extends DocumentResult {
  claim: string;
  claim_id: string;
  channel: ChannelName;
  sorted_by?: StanceLabel;
}
