"""Keyword-overlap re-ranking: title overlap with the claim changes order.

The re-rank score is (match/claim) * (match/title) * score_init over tokens
tagged NN, NNS, NNP, NNPS, JJ, CD.
"""

from fakta import DocumentRecord, build_index, generate_query, pos_tag, search, tokenize
from fakta.retrieval import bm25
from fakta.rerank import rerank

corpus = [
    DocumentRecord(
        "news/spam",
        "Weather report for the coastal region",
        "ancient ancient castle castle castle quiet quiet harbor harbor "
        "harbor castle ancient quiet harbor castle",
    ),
    DocumentRecord(
        "wiki/castle",
        "Ancient castle of the quiet harbor",
        "The ancient castle overlooks the quiet harbor from the cliff, "
        "where guides meet visitors each morning in summer.",
    ),
]
index = build_index(corpus)
claim = "The ancient castle near the quiet harbor."
claim_tokens = pos_tag(tokenize(claim))
query = generate_query(claim_tokens)
print("query:", " ".join(query.terms), "\n")

hits = search(index, query, bm25(), 10)
print("raw ranking (term-frequency spam wins):")
for h in hits:
    print(f"  {h.rank}. {h.doc_id:12s} score_init={h.score_init:.3f}")

reranked = rerank(claim_tokens, hits, index.titles())
print("\nafter re-ranking (title keyword overlap wins):")
for h in reranked:
    print(f"  {h.rank}. {h.doc_id:12s} score_init={h.score_init:.3f} f_rank={h.f_rank:.3f}")
