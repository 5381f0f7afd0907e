"""The eleven ranking models scoring the same toy corpus side by side."""

from fakta import DocumentRecord, build_index, search, table_models

corpus = [
    DocumentRecord("d1", "Cat nap", "the cat sat on the warm mat"),
    DocumentRecord("d2", "Dog run", "the dog sat near the door"),
    DocumentRecord("d3", "Cats everywhere", "cat cat cat climbing the curtains"),
    DocumentRecord("d4", "Mixed pets", "a cat and a dog shared the couch"),
]
index = build_index(corpus)
stats = index.stats
print(f"index: {stats.doc_count} docs, avg length {stats.avg_doc_len:.2f} tokens")
print(f"df(cat)={stats.df['cat']}, ctf(cat)={stats.ctf['cat']}\n")

query = ["cat", "dog"]
print(f"query {query}:\n")
header = f"{'model':24s} " + "  ".join(f"{d.doc_id:>8s}" for d in corpus)
print(header)
print("-" * len(header))
for model in table_models():
    hits = {h.doc_id: h.score_init for h in search(index, query, model, 10)}
    row = "  ".join(f"{hits.get(d.doc_id, 0.0):8.3f}" for d in corpus)
    print(f"{model.name:24s} {row}")
