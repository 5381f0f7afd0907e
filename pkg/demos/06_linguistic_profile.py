"""Lexicon scores (cue frequency over words) and word-cloud data."""

from fakta import profile, tokenize, word_cloud
from fakta.pipeline import default_lexicons

doc = (
    "The notorious regime celebrated its propaganda victory. Observers "
    "called the spectacle shameful, an outrageous and shocking charade, "
    "while loyal papers praised the wonderful, glorious parade."
)
tokens = tokenize(doc)
lexicons = default_lexicons()

prof = profile(tokens, lexicons)
print(f"document has {prof.doc_token_count} word tokens")
for name, score in sorted(prof.scores.items()):
    bar = "#" * round(score * 200)
    print(f"  {name:20s} {score:.4f} {bar}")

print("\nword clouds:")
for lex in lexicons:
    cloud = word_cloud(tokens, lex, top_n=5)
    print(f"  {cloud.lexicon:14s} {list(cloud.entries)}")
