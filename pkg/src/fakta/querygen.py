"""Turn a claim into a search query, with iterative relaxation.

Queries keep the claim's verbs, nouns and adjectives (stopwords removed),
then append named-entity tokens not already present. Relaxation drops the
final term, so appended entity duplicates are shed before core content
words.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CannotRelaxError, EmptyQueryError
from .textanalysis import EntitySpan, Token, default_stopwords

MAX_QUERY_TERMS = 10
QUERY_POS = frozenset({"VB", "NN", "NNS", "NNP", "NNPS", "JJ"})

ORIGIN_CONTENT = "content-word"
ORIGIN_ENTITY = "named-entity"


@dataclass(frozen=True)
class Query:
    terms: tuple[str, ...]
    origins: tuple[str, ...]

    def __post_init__(self):
        if len(self.terms) != len(self.origins):
            raise ValueError("terms and origins must align")
        if len(self.terms) > MAX_QUERY_TERMS:
            raise ValueError(f"query longer than {MAX_QUERY_TERMS} terms")
        if len(set(self.terms)) != len(self.terms):
            raise ValueError("duplicate query terms")

    def __len__(self) -> int:
        return len(self.terms)

    def text(self) -> str:
        return " ".join(self.terms)


def generate_query(
    claim_tokens: list[Token] | tuple[Token, ...],
    entities: list[EntitySpan] | tuple[EntitySpan, ...] = (),
    stopwords: frozenset[str] | None = None,
    max_terms: int = MAX_QUERY_TERMS,
) -> Query:
    """Build a query from POS-tagged claim tokens plus named entities.

    Raises EmptyQueryError when no token qualifies; callers may fall back
    to fallback_query.
    """
    if stopwords is None:
        stopwords = default_stopwords()
    terms: list[str] = []
    origins: list[str] = []
    seen: set[str] = set()
    for tok in claim_tokens:
        if tok.pos not in QUERY_POS:
            continue
        if tok.normalized in stopwords or tok.normalized in seen:
            continue
        seen.add(tok.normalized)
        terms.append(tok.normalized)
        origins.append(ORIGIN_CONTENT)
    for span in entities:
        for idx in span.token_indices:
            norm = claim_tokens[idx].normalized
            if norm in seen:
                continue
            seen.add(norm)
            terms.append(norm)
            origins.append(ORIGIN_ENTITY)
    if not terms:
        raise EmptyQueryError("claim has no query-eligible terms")
    return Query(terms=tuple(terms[:max_terms]), origins=tuple(origins[:max_terms]))


def fallback_query(
    claim_tokens: list[Token] | tuple[Token, ...],
    stopwords: frozenset[str] | None = None,
    max_terms: int = MAX_QUERY_TERMS,
) -> Query:
    """Last-resort query: the longest non-stopword tokens, in claim order."""
    if stopwords is None:
        stopwords = default_stopwords()
    candidates: list[tuple[int, str]] = []
    seen: set[str] = set()
    for pos, tok in enumerate(claim_tokens):
        if not tok.is_word or tok.normalized in stopwords or tok.normalized in seen:
            continue
        seen.add(tok.normalized)
        candidates.append((pos, tok.normalized))
    if not candidates:
        raise EmptyQueryError("no non-stopword tokens to fall back to")
    longest = sorted(candidates, key=lambda c: (-len(c[1]), c[0]))[:max_terms]
    longest.sort(key=lambda c: c[0])
    terms = tuple(term for _, term in longest)
    return Query(terms=terms, origins=(ORIGIN_CONTENT,) * len(terms))


def relax_query(query: Query) -> Query:
    """Drop the final term. Relaxing an empty query is an error."""
    if len(query.terms) == 0:
        raise CannotRelaxError("query has no terms left to drop")
    return Query(terms=query.terms[:-1], origins=query.origins[:-1])
