"""Lexicon-based language profiling of documents.

A document's score for a lexicon is the number of cue-token occurrences
divided by the total number of word tokens (punctuation is not a word).
Integer counts go in, one float division comes out, so the result matches
exact rational arithmetic. Polar lexicons (sentiment) split into separate
positive and negative scores.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .textanalysis import Lexicon, Token


@dataclass(frozen=True)
class LinguisticProfile:
    scores: dict[str, float]
    doc_token_count: int


@dataclass(frozen=True)
class WordCloudData:
    lexicon: str
    entries: tuple[tuple[str, int], ...]  # (cue, frequency), freq desc then cue asc


def _word_counts(doc_tokens: Sequence[Token]) -> Counter:
    return Counter(t.normalized for t in doc_tokens if t.is_word)


def lexicon_score(lexicon: Lexicon, doc_tokens: Sequence[Token]) -> float:
    """Cue occurrences over total word tokens; 0 for empty docs or lexicons."""
    counts = _word_counts(doc_tokens)
    total = sum(counts.values())
    if total == 0:
        return 0.0
    cue_occurrences = sum(counts[cue] for cue in lexicon.cues)
    return cue_occurrences / total


def profile(doc_tokens: Sequence[Token], lexicons: Sequence[Lexicon]) -> LinguisticProfile:
    """One score per lexicon; polar lexicons contribute <name>_positive and
    <name>_negative instead of a single score."""
    if not lexicons:
        raise ValueError("at least one lexicon is required")
    counts = _word_counts(doc_tokens)
    total = sum(counts.values())
    scores: dict[str, float] = {}
    for lex in lexicons:
        if lex.is_polar:
            for tag, suffix in (("+", "positive"), ("-", "negative")):
                cues = lex.cues_with_polarity(tag)
                hits = sum(counts[c] for c in cues)
                scores[f"{lex.name}_{suffix}"] = hits / total if total else 0.0
        else:
            hits = sum(counts[c] for c in lex.cues)
            scores[lex.name] = hits / total if total else 0.0
    return LinguisticProfile(scores=scores, doc_token_count=total)


def word_cloud(
    doc_tokens: Sequence[Token], lexicon: Lexicon, top_n: int = 20
) -> WordCloudData:
    """The top_n most frequent cues present in the document."""
    if top_n < 1:
        raise ValueError("top_n must be >= 1")
    counts = _word_counts(doc_tokens)
    present = [(cue, counts[cue]) for cue in lexicon.cues if counts[cue] > 0]
    present.sort(key=lambda e: (-e[1], e[0]))
    return WordCloudData(lexicon=lexicon.name, entries=tuple(present[:top_n]))
