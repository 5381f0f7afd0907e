"""Two-level stance detection with sentence rationales.

Level 1 answers related/unrelated, level 2 splits related into agree,
disagree and discuss; the flattened view multiplies through.
"""

from fakta import predict_stance, score_sentences, sort_rationales
from fakta.fixtures import make_toy_stance_dataset
from fakta.stance import train

data = make_toy_stance_dataset(10, seed=0)
model = train(data, lr=0.5, epochs=300, l2=1e-4, seed=0)

claim = "The city museum hosts rare birds."
documents = {
    "agree": "The city museum hosts rare birds. Curators confirmed the report as true.",
    "disagree": "The story about the museum birds is false, a hoax keepers refuted.",
    "discuss": "Officials are reportedly investigating whether the museum hosts rare birds.",
    "unrelated": "Sourdough starters need regular feeding and a warm shelf.",
}

for expected, doc in documents.items():
    dist = predict_stance(model, claim, doc)
    flat = {k: round(v, 3) for k, v in dist.flattened().items()}
    print(f"{expected:10s} -> dominant {dist.dominant():10s} {flat}")

long_doc = (
    "The city museum hosts rare birds. Keepers confirmed the aviary is real. "
    "One columnist calls the whole story false. Pasta recipes vary wildly."
)
print("\nper-sentence rationales, re-ordered by p(disagree):")
rationales = score_sentences(model, claim, long_doc)
for rat in sort_rationales(rationales, "disagree"):
    print(f"  p(disagree)={rat.dist.p('disagree'):.3f} dominant={rat.dominant:10s} {rat.text!r}")
