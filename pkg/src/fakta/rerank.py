"""Keyword-overlap re-ranking of retrieval hits.

The re-rank score multiplies the share of claim keywords matched and the
share of title keywords matched into the initial retrieval score:

    f_rank = (|match| / |claim|) * (|match| / |title|) * score_init

Keywords are tokens tagged NN, NNS, NNP, NNPS, JJ or CD. A claim or title
with no keyword tokens makes the ratio undefined; such hits get f_rank 0
and sink to the bottom instead of erroring.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, replace
from typing import Mapping, Sequence

from .retrieval import ScoredDocument
from .textanalysis import Token, pos_tag, tokenize

logger = logging.getLogger(__name__)

KEYWORD_POS = frozenset({"NN", "NNS", "NNP", "NNPS", "JJ", "CD"})

COUNT_TOKENS = "multiset"  # every keyword occurrence counts
COUNT_TYPES = "types"  # distinct keywords count once


@dataclass(frozen=True)
class KeywordCounts:
    claim_kw: int
    title_kw: int
    match_kw: int

    def __post_init__(self):
        if self.match_kw > min(self.claim_kw, self.title_kw):
            raise ValueError("match count exceeds a side count")
        if min(self.claim_kw, self.title_kw, self.match_kw) < 0:
            raise ValueError("counts must be non-negative")


def _keywords(tokens: Sequence[Token]) -> list[str]:
    return [t.normalized for t in tokens if t.pos in KEYWORD_POS]


def keyword_counts(
    claim_tokens: Sequence[Token],
    title_tokens: Sequence[Token],
    counting: str = COUNT_TOKENS,
) -> KeywordCounts:
    """Keyword occurrences in claim and title plus their overlap size."""
    claim_kw = _keywords(claim_tokens)
    title_kw = _keywords(title_tokens)
    if counting == COUNT_TOKENS:
        overlap = Counter(claim_kw) & Counter(title_kw)
        return KeywordCounts(len(claim_kw), len(title_kw), sum(overlap.values()))
    if counting == COUNT_TYPES:
        claim_set, title_set = set(claim_kw), set(title_kw)
        return KeywordCounts(
            len(claim_set), len(title_set), len(claim_set & title_set)
        )
    raise ValueError(f"unknown counting mode {counting!r}")


def rerank_score(counts: KeywordCounts, score_init: float) -> float:
    """Direct evaluation of the overlap formula with zero-denominator guard."""
    if counts.claim_kw == 0 or counts.title_kw == 0:
        return 0.0
    return (
        (counts.match_kw / counts.claim_kw)
        * (counts.match_kw / counts.title_kw)
        * score_init
    )


def rerank(
    claim_tokens: Sequence[Token],
    hits: Sequence[ScoredDocument],
    titles: Mapping[str, str],
    counting: str = COUNT_TOKENS,
) -> list[ScoredDocument]:
    """Fill f_rank for every hit and re-sort descending, stable on the
    original order. Hits are never added or removed; a missing title is
    treated as empty (f_rank 0) with a warning."""
    rescored = []
    for hit in hits:
        title = titles.get(hit.doc_id)
        if title is None:
            logger.warning("no title for doc %r; treating as empty", hit.doc_id)
            title = ""
        title_tokens = pos_tag(tokenize(title))
        counts = keyword_counts(claim_tokens, title_tokens, counting)
        rescored.append(replace(hit, f_rank=rerank_score(counts, hit.score_init)))
    rescored.sort(key=lambda h: -h.f_rank)
    return [replace(h, rank=i) for i, h in enumerate(rescored, start=1)]
