"""Tokenization, sentence splitting, coarse POS tags, and entity spans."""

from fakta import extract_named_entities, pos_tag, split_sentences, tokenize

claim = "ISIS infilitrates the United States."

tokens = pos_tag(tokenize(claim))
print("tokens and tags:")
for tok in tokens:
    print(f"  {tok.surface!r:18s} {tok.pos:5s} span {tok.start}..{tok.end}")

print("\nnamed entities:", [e.text for e in extract_named_entities(tokens)])

text = "Dr. Smith left at 3.5 p.m. yesterday. He returned today! Nobody noticed."
print(f"\nsentences of {text!r}:")
for sent in split_sentences(text):
    print(f"  [{sent.start:3d}..{sent.end:3d}] {text[sent.start:sent.end]!r}")
