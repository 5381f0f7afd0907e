"""Acceptance suite: one test per release criterion, each printing a
pass/fail line with its runtime (visible with pytest -s).

Run:  pytest tests/test_acceptance.py -v -s
"""

import json
import time
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from fakta import evaluation as ev
from fakta import fixtures as fx
from fakta import linguistics as lg
from fakta import pipeline as pl
from fakta import sources as src
from fakta import stance as st
from fakta.rerank import KeywordCounts, rerank_score
from fakta.retrieval import bm25, build_index, dfr_z, table_models, search
from fakta.rerank import rerank as apply_rerank
from fakta.textanalysis import Lexicon, data_path, pos_tag, tokenize, extract_named_entities
from fakta.querygen import generate_query

from oracle_retrieval import brute_force_ranking
from test_retrieval import assert_same_ranking, index_from_token_docs, random_corpus


class _Budget:
    def __init__(self, name, seconds):
        self.name = name
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        status = "PASS" if exc_type is None else "FAIL"
        print(f"[acceptance] {self.name}: {status} in {elapsed:.2f}s "
              f"(budget {self.seconds:.0f}s)")
        if exc_type is None:
            assert elapsed < self.seconds, f"{self.name} exceeded {self.seconds}s"


def test_criterion_1_rerank_formula_exactness():
    """Overlap re-rank score matches the closed formula (with the
    zero-denominator guard) to 1e-12 relative on 10,000 random draws."""
    with _Budget("1 rerank formula exactness", 1.0):
        rng = np.random.default_rng(101)
        for _ in range(10_000):
            claim_kw = int(rng.integers(0, 12))
            title_kw = int(rng.integers(0, 12))
            match_kw = int(rng.integers(0, min(claim_kw, title_kw) + 1))
            score_init = float(rng.uniform(0.0, 100.0))
            got = rerank_score(KeywordCounts(claim_kw, title_kw, match_kw), score_init)
            if claim_kw == 0 or title_kw == 0:
                expected = 0.0
            else:
                expected = (match_kw / claim_kw) * (match_kw / title_kw) * score_init
            if expected == 0.0:
                assert got == 0.0
            else:
                assert abs(got - expected) <= 1e-12 * abs(expected)


def test_criterion_2_lexicon_score_exactness():
    """Lexicon score equals the exact rational count ratio on 1,000 random
    token/lexicon fixtures."""
    with _Budget("2 lexicon score exactness", 1.0):
        rng = np.random.default_rng(202)
        vocab = [f"w{i}" for i in range(16)]
        for _ in range(1_000):
            n = int(rng.integers(1, 80))
            words = [vocab[j] for j in rng.integers(0, len(vocab), n)]
            cue_set = frozenset(vocab[j] for j in rng.integers(0, len(vocab), 5))
            lexicon = Lexicon(name="acc", cues=cue_set, polarity={})
            doc = tokenize(" ".join(words))
            got = lg.lexicon_score(lexicon, doc)
            exact = Fraction(sum(1 for w in words if w in cue_set), n)
            assert got == float(exact)


def test_criterion_3_retrieval_oracle_equivalence():
    """All eleven ranking models match a brute-force evaluation of their
    closed forms on 200 randomized toy corpora: scores within 1e-9
    relative, ranking identical under the documented tie-break."""
    with _Budget("3 retrieval oracle equivalence", 30.0):
        rng = np.random.default_rng(303)
        models = table_models()
        assert len(models) == 11
        for _ in range(200):
            docs = random_corpus(rng, max_docs=20, vocab_size=8)
            index = index_from_token_docs(docs)
            terms = [f"w{rng.integers(0, 8)}" for _ in range(int(rng.integers(1, 4)))]
            for model in models:
                expected = brute_force_ranking(model, docs, terms, k=25)
                got = search(index, terms, model, 25)
                assert_same_ranking(got, expected, model.name)


def test_criterion_4_reranking_trend():
    """On the shipped 200-doc synthetic corpus, re-ranking never hurts R@1
    for BM25 and DFR_Z, and achieves R@1 = 1.0 on the subset of claims
    whose gold titles contain every claim keyword."""
    with _Budget("4 re-ranking trend", 10.0):
        corpus_rows = [
            json.loads(line)
            for line in data_path("synthetic200", "corpus.jsonl").read_text().splitlines()
        ]
        from fakta.retrieval import DocumentRecord

        index = build_index([DocumentRecord(**row) for row in corpus_rows])
        claim_rows = [
            json.loads(line)
            for line in data_path("synthetic200", "claims.jsonl").read_text().splitlines()
        ]
        claims = [
            ev.FeverClaim(str(r["id"]), r["claim"], "SUP", tuple(r["evidence"]))
            for r in claim_rows
        ]
        full_title_ids = {str(r["id"]) for r in claim_rows if r["full_title"]}
        assert full_title_ids

        for model in (bm25(), dfr_z()):
            rows = ev.run_retrieval_eval(
                index, claims, [model], variants=("raw", "reranked"), ks=(1,)
            )
            raw = next(r for r in rows if r.variant == "raw").recall_at[1]
            reranked = next(r for r in rows if r.variant == "reranked").recall_at[1]
            assert reranked >= raw, model.name
            # full-title subset: re-ranked rank 1 must be the gold document
            subset = [c for c in claims if c.id in full_title_ids]
            ranked = [
                ev.ranked_doc_ids(index, c.claim, model, "reranked", depth=20)
                for c in subset
            ]
            r1 = ev.recall_at_k(ranked, [c.evidence for c in subset], 1)
            assert r1 == 1.0, model.name


def test_criterion_5_stance_numerics():
    """Flattened stance distributions sum to 1 +/- 1e-9 on 10,000 random
    weight/input draws; analytic gradients match central differences within
    1e-4 relative on 100 draws; toy training reaches 95% accuracy."""
    with _Budget("5 stance numerics", 60.0):
        rng = np.random.default_rng(505)
        d = 32
        x = rng.normal(size=(10_000, d))
        w1 = rng.normal(size=(10_000, d))
        b1 = rng.normal(size=10_000)
        w2 = rng.normal(size=(10_000, 3, d))
        b2 = rng.normal(size=(10_000, 3))
        p_rel = 1.0 / (1.0 + np.exp(-(np.einsum("nd,nd->n", w1, x) + b1)))
        logits = np.einsum("nkd,nd->nk", w2, x) + b2
        shifted = logits - logits.max(axis=1, keepdims=True)
        conds = np.exp(shifted) / np.exp(shifted).sum(axis=1, keepdims=True)
        for i in range(10_000):
            dist = st.compose(float(p_rel[i]), conds[i])
            flat = dist.flattened()
            assert abs(sum(flat.values()) - 1.0) <= 1e-9
            assert all(v >= 0.0 for v in flat.values())

        # gradient checks: 50 draws per level = 100 total
        def rel_err(a, b):
            return np.abs(a - b) / np.maximum(1e-8, np.abs(a) + np.abs(b))

        for _ in range(50):
            n, dims = int(rng.integers(2, 9)), int(rng.integers(3, 14))
            xs = rng.normal(size=(n, dims))
            y1 = rng.integers(0, 2, size=n).astype(float)
            w = rng.normal(size=dims)
            b = float(rng.normal())
            l2 = float(rng.uniform(0, 0.1))
            analytic, _ = st.level1_grad(w, b, xs, y1, l2)
            numeric = np.zeros(dims)
            eps = 1e-6
            for j in range(dims):
                w[j] += eps
                hi = st.level1_loss(w, b, xs, y1, l2)
                w[j] -= 2 * eps
                lo = st.level1_loss(w, b, xs, y1, l2)
                w[j] += eps
                numeric[j] = (hi - lo) / (2 * eps)
            assert rel_err(analytic, numeric).max() < 1e-4

        for _ in range(50):
            n, dims = int(rng.integers(2, 9)), int(rng.integers(3, 10))
            xs = rng.normal(size=(n, dims))
            y2 = rng.integers(0, 3, size=n)
            w = rng.normal(size=(3, dims))
            b = rng.normal(size=3)
            l2 = float(rng.uniform(0, 0.1))
            analytic, _ = st.level2_grad(w, b, xs, y2, l2)
            numeric = np.zeros_like(w)
            eps = 1e-6
            for r in range(3):
                for j in range(dims):
                    w[r, j] += eps
                    hi = st.level2_loss(w, b, xs, y2, l2)
                    w[r, j] -= 2 * eps
                    lo = st.level2_loss(w, b, xs, y2, l2)
                    w[r, j] += eps
                    numeric[r, j] = (hi - lo) / (2 * eps)
            assert rel_err(analytic, numeric).max() < 1e-4

        toy = fx.make_toy_stance_dataset(5, seed=0)
        assert len(toy) == 40
        model = st.train(toy, lr=0.5, epochs=300, l2=1e-4, seed=0)
        assert st.training_accuracy(model, toy) >= 0.95


def test_criterion_6_verdict_rule_table():
    """decide_verdict matches an independent brute-force enumeration of the
    rule table over a 10x10x10 grid x both label modes x 3 thresholds."""
    with _Budget("6 verdict rule table", 1.0):
        probs = np.linspace(0.0, 1.0, 10)
        tops = np.linspace(0.0, 3.0, 10)
        taus = (0.5, 1.5, 2.5)
        checked = 0
        for agree in probs:
            for disagree in probs:
                if agree + disagree > 1.0:
                    continue
                agg = st.distribution_from_flat(
                    agree, disagree, 1.0 - agree - disagree, 0.0
                )
                a, d = agg.p("agree"), agg.p("disagree")
                for top in tops:
                    for mode in ("2lbl", "3lbl"):
                        for tau in taus:
                            config = pl.PipelineConfig(
                                label_mode=mode, nei_threshold=tau
                            )
                            got = pl.decide_verdict(agg, float(top), config).label
                            if mode == "2lbl":
                                want = "SUP" if a >= d else "REF"
                            elif top < tau:
                                want = "NEI"
                            elif a > d:
                                want = "SUP"
                            elif d > a:
                                want = "REF"
                            else:
                                want = "NEI"
                            assert got == want
                            checked += 1
        assert checked > 3000


def test_criterion_7_metrics_oracle():
    """classification_metrics equals a hand-rolled confusion computation on
    1,000 random prediction/gold vectors exactly; recall@K never decreases
    in K."""
    with _Budget("7 metrics oracle", 5.0):
        rng = np.random.default_rng(707)
        labels = np.array(["SUP", "REF", "NEI"])
        for _ in range(1_000):
            n = int(rng.integers(1, 50))
            preds = list(labels[rng.integers(0, 3, n)])
            gold = list(labels[rng.integers(0, 3, n)])
            metrics = ev.classification_metrics(preds, gold)
            # independent oracle
            pairs = Counter(zip(gold, preds))
            conf = {g: {p: pairs.get((g, p), 0) for p in labels} for g in labels}
            f1 = {}
            for lab in labels:
                tp = conf[lab][lab]
                fp = sum(conf[g][lab] for g in labels) - tp
                fn = sum(conf[lab].values()) - tp
                prec = tp / (tp + fp) if tp + fp else 0.0
                rec = tp / (tp + fn) if tp + fn else 0.0
                f1[lab] = 2 * prec * rec / (prec + rec) if prec + rec else 0.0
            present = [lab for lab in labels if sum(conf[lab].values())]
            assert metrics.confusion == conf
            assert metrics.f1 == f1
            assert metrics.f1_macro == sum(f1[lab] for lab in present) / len(present)
            assert metrics.accuracy == sum(conf[l][l] for l in labels) / n

        doc_pool = [f"d{i}" for i in range(12)]
        for _ in range(300):
            n_claims = int(rng.integers(1, 8))
            results, gold = [], []
            for _ in range(n_claims):
                perm = rng.permutation(len(doc_pool))
                results.append([doc_pool[j] for j in perm[: rng.integers(0, 10)]])
                gold.append([doc_pool[j] for j in rng.integers(0, 12, rng.integers(1, 3))])
            values = [ev.recall_at_k(results, gold, k) for k in range(1, 12)]
            assert values == sorted(values)


def _bundled_checker():
    corpus_rows = [
        json.loads(line)
        for line in data_path("mini_corpus.jsonl").read_text().splitlines()
    ]
    from fakta.retrieval import DocumentRecord

    index = build_index([DocumentRecord(**row) for row in corpus_rows])
    assert len(index) == 50
    registry = src.load_registry(data_path("registry.csv"))
    model = st.StanceModel.load(data_path("stance_toy_model.bin"))
    return pl.FactChecker(
        index,
        registry,
        model,
        provider=src.StubSearchProvider(data_path("stub_search")),
    )


def test_criterion_8_end_to_end_determinism():
    """Checking the bundled fixtures reproduces the recorded golden results
    byte for byte (timings excluded): SUP for the supported claim, NEI for
    the no-overlap claim."""
    with _Budget("8 end-to-end determinism", 5.0):
        checker = _bundled_checker()
        for claim, golden_name, expected_label in (
            (fx.SUPPORTED_CLAIM, "check_supported.json", "SUP"),
            (fx.NO_OVERLAP_CLAIM, "check_nei.json", "NEI"),
        ):
            result = checker.check(claim)
            assert result.verdict.label == expected_label
            got = (
                json.dumps(
                    pl.result_to_dict(result, include_timings=False),
                    sort_keys=True,
                    ensure_ascii=False,
                    separators=(",", ":"),
                )
                + "\n"
            ).encode("utf-8")
            golden = data_path("golden", golden_name).read_bytes()
            assert got == golden, f"golden mismatch for {golden_name}"
        nei_result = checker.check(fx.NO_OVERLAP_CLAIM)
        assert all(len(ch.documents) == 0 for ch in nei_result.channels)


def test_criterion_9_nei_threshold_tuning():
    """tune_threshold recovers the separating threshold 1.5 exactly on the
    bundled bimodal dev fixture."""
    with _Budget("9 NEI threshold tuning", 5.0):
        corpus_rows = [
            json.loads(line)
            for line in data_path("nei_dev", "corpus.jsonl").read_text().splitlines()
        ]
        from fakta.retrieval import DocumentRecord

        index = build_index([DocumentRecord(**row) for row in corpus_rows])
        registry = src.load_registry(data_path("registry.csv"))
        model = st.StanceModel.load(data_path("stance_toy_model.bin"))
        checker = pl.FactChecker(
            index, registry, model,
            config=pl.PipelineConfig(channels=("wikipedia",), k=1),
        )
        claims = ev.load_fever(data_path("nei_dev", "claims.jsonl"))
        best = ev.tune_threshold(claims, checker, [0.5, 1.0, 1.5, 2.0, 3.0])
        assert best == 1.5
