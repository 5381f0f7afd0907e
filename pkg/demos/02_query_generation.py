"""Claims become short keyword queries; relaxation drops trailing terms."""

from fakta import extract_named_entities, generate_query, pos_tag, relax_query, tokenize

claim = "The brave Norwegian explorer Amundsen reached the South Pole in 1911."
tokens = pos_tag(tokenize(claim))
query = generate_query(tokens, extract_named_entities(tokens))

print("claim:", claim)
print("query terms (content words first, then entity tokens):")
for term, origin in zip(query.terms, query.origins):
    print(f"  {term:12s} {origin}")

print("\nrelaxation sequence (used when a search returns nothing):")
while len(query) > 0:
    print(" ", " ".join(query.terms))
    query = relax_query(query)
