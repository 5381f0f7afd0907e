"""The whole pipeline on the bundled fixtures: four channels, aggregated
stance per channel, and a SUP/REF/NEI verdict from the basis channel."""

import json

from fakta import FactChecker, build_index
from fakta.fixtures import NO_OVERLAP_CLAIM, SUPPORTED_CLAIM, mini_corpus_records
from fakta.sources import StubSearchProvider, load_registry
from fakta.stance import StanceModel
from fakta.textanalysis import data_path

checker = FactChecker(
    index=build_index(mini_corpus_records()),
    registry=load_registry(data_path("registry.csv")),
    stance_model=StanceModel.load(data_path("stance_toy_model.bin")),
    provider=StubSearchProvider(data_path("stub_search")),
)

for claim in (SUPPORTED_CLAIM, NO_OVERLAP_CLAIM):
    result = checker.check(claim)
    v = result.verdict
    print(f"claim: {claim}")
    print(f"  query: {' '.join(result.query.terms) or '(none)'}")
    print(
        f"  verdict: {v.label} (agree {v.agree_score:.3f} / disagree "
        f"{v.disagree_score:.3f} / discuss {v.discuss_score:.3f})"
    )
    for channel in result.channels:
        agg = channel.aggregate
        summary = (
            f"agree {agg.p('agree'):.2f}" if agg else "no documents"
        )
        print(f"  [{channel.channel:9s}] {len(channel.documents)} docs, {summary}")
        for doc in channel.documents[:2]:
            print(f"      #{doc.hit.rank} {doc.hit.doc_id} ({doc.stance_dist.dominant()})")
    print()

result = checker.check(SUPPORTED_CLAIM)
payload = json.dumps(
    {"claim": result.claim, "verdict": result.verdict.label,
     "timings_keys": sorted(result.timings)},
)
print("serialized summary:", payload)
