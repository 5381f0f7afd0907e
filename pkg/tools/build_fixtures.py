#!/usr/bin/env python3
"""Regenerate every bundled fixture under src/fakta/data/.

All generators are seeded, so rerunning this script reproduces the shipped
files bit-for-bit (the golden result files additionally depend on the local
BLAS; regenerate them when moving to different hardware).
"""

import json
import sys
from pathlib import Path

from fakta import fixtures as fx
from fakta import pipeline as pl
from fakta import sources as src
from fakta import stance as st
from fakta.querygen import generate_query
from fakta.retrieval import build_index
from fakta.textanalysis import data_path, extract_named_entities, pos_tag, tokenize

DATA = Path(__file__).resolve().parent.parent / "src" / "fakta" / "data"

TOY_TRAIN_PARAMS = dict(lr=0.5, epochs=300, l2=1e-4, seed=0)


def claim_query(claim: str):
    tokens = pos_tag(tokenize(claim))
    return generate_query(tokens, extract_named_entities(tokens))


def canonical_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def main() -> int:
    DATA.mkdir(parents=True, exist_ok=True)

    # 1. mini corpus
    records = fx.mini_corpus_records()
    fx.write_jsonl(DATA / "mini_corpus.jsonl", fx.records_to_rows(records))
    print(f"mini_corpus.jsonl: {len(records)} docs")

    # 2. toy stance training data + model
    toy = fx.make_toy_stance_dataset(10, seed=0)
    fx.write_jsonl(
        DATA / "stance_toy_train.jsonl",
        [{"claim": e.claim, "document": e.document, "stance": e.label} for e in toy],
    )
    model = st.train(toy, **TOY_TRAIN_PARAMS)
    model.save(DATA / "stance_toy_model.bin")
    acc = st.training_accuracy(model, toy)
    print(f"stance_toy_model.bin: {len(toy)} examples, train acc {acc:.3f}")
    assert acc >= 0.95

    # 3. stub search fixtures (castle rows sit at the 2-term prefix so the
    #    media channels demonstrate query relaxation)
    stub_dir = DATA / "stub_search"
    stub_dir.mkdir(exist_ok=True)
    for old in stub_dir.glob("*.jsonl"):
        old.unlink()
    rows_by_claim = fx.stub_search_rows()
    eiffel_q = claim_query(fx.SUPPORTED_CLAIM)
    fx.write_jsonl(
        stub_dir / src.query_fixture_name(eiffel_q.terms),
        rows_by_claim[fx.SUPPORTED_CLAIM],
    )
    castle_q = claim_query(fx.RELAXATION_CLAIM)
    fx.write_jsonl(
        stub_dir / src.query_fixture_name(castle_q.terms[:2]),
        rows_by_claim[fx.RELAXATION_CLAIM],
    )
    print(f"stub_search: {eiffel_q.terms} and prefix {castle_q.terms[:2]}")

    # 4. synthetic retrieval corpus
    docs, claims = fx.make_synthetic_retrieval_corpus(seed=0)
    fx.write_jsonl(DATA / "synthetic200" / "corpus.jsonl", fx.records_to_rows(docs))
    fx.write_jsonl(DATA / "synthetic200" / "claims.jsonl", claims)
    print(f"synthetic200: {len(docs)} docs, {len(claims)} claims")

    # 5. NEI threshold dev fixture
    dev_docs, dev_claims = fx.make_nei_dev_fixture()
    fx.write_jsonl(DATA / "nei_dev" / "corpus.jsonl", fx.records_to_rows(dev_docs))
    fx.write_jsonl(DATA / "nei_dev" / "claims.jsonl", dev_claims)
    print(f"nei_dev: {len(dev_docs)} docs, {len(dev_claims)} claims")

    # 6. golden end-to-end results (timings stripped)
    index = build_index(records)
    registry = src.load_registry(data_path("registry.csv"))
    loaded = st.StanceModel.load(DATA / "stance_toy_model.bin")
    checker = pl.FactChecker(
        index,
        registry,
        loaded,
        provider=src.StubSearchProvider(stub_dir),
        config=pl.PipelineConfig(),
    )
    golden_dir = DATA / "golden"
    golden_dir.mkdir(exist_ok=True)
    sup = checker.check(fx.SUPPORTED_CLAIM)
    assert sup.verdict.label == "SUP", sup.verdict
    (golden_dir / "check_supported.json").write_text(
        canonical_json(pl.result_to_dict(sup, include_timings=False)) + "\n",
        encoding="utf-8",
    )
    nei = checker.check(fx.NO_OVERLAP_CLAIM)
    assert nei.verdict.label == "NEI", nei.verdict
    assert all(len(ch.documents) == 0 for ch in nei.channels)
    (golden_dir / "check_nei.json").write_text(
        canonical_json(pl.result_to_dict(nei, include_timings=False)) + "\n",
        encoding="utf-8",
    )
    print(
        f"golden: SUP verdict ({sup.verdict.agree_score:.3f} agree vs "
        f"{sup.verdict.disagree_score:.3f} disagree), NEI verdict recorded"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
