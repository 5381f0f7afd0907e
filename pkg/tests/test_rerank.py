import numpy as np
import pytest

from fakta import rerank as rr
from fakta import textanalysis as ta
from fakta.retrieval import ScoredDocument


def tagged(text):
    return ta.pos_tag(ta.tokenize(text))


class TestKeywordCounts:
    def test_hand_count(self):
        claim = tagged("the isis united states infiltration")
        title = tagged("the isis syria war")
        counts = rr.keyword_counts(claim, title)
        assert counts == rr.KeywordCounts(4, 3, 1)

    def test_identity(self):
        toks = tagged("castle harbor winter")
        counts = rr.keyword_counts(toks, toks)
        assert counts == rr.KeywordCounts(3, 3, 3)

    def test_title_without_keywords(self):
        claim = tagged("castle harbor winter")
        title = tagged("and then of...")
        counts = rr.keyword_counts(claim, title)
        assert counts.title_kw == 0 and counts.match_kw == 0

    def test_multiset_counts_occurrences(self):
        claim = tagged("castle castle harbor")
        title = tagged("castle castle castle")
        counts = rr.keyword_counts(claim, title)
        assert counts == rr.KeywordCounts(3, 3, 2)

    def test_type_counting_mode(self):
        claim = tagged("castle castle harbor")
        title = tagged("castle castle castle")
        counts = rr.keyword_counts(claim, title, counting=rr.COUNT_TYPES)
        assert counts == rr.KeywordCounts(2, 1, 1)

    def test_match_bounded(self):
        claim = tagged("brave soldiers guarded the ancient castle")
        title = tagged("ancient castle with brave guards")
        c = rr.keyword_counts(claim, title)
        assert c.match_kw <= min(c.claim_kw, c.title_kw)


class TestRerankScore:
    def test_direct_substitution(self):
        assert rr.rerank_score(rr.KeywordCounts(4, 3, 2), 12.0) == pytest.approx(4.0)

    def test_zero_match(self):
        assert rr.rerank_score(rr.KeywordCounts(4, 3, 0), 12.0) == 0.0

    def test_perfect_overlap_preserves_score(self):
        s = 7.25
        assert rr.rerank_score(rr.KeywordCounts(3, 3, 3), s) == pytest.approx(s)

    def test_zero_denominator_guard(self):
        assert rr.rerank_score(rr.KeywordCounts(0, 3, 0), 5.0) == 0.0
        assert rr.rerank_score(rr.KeywordCounts(3, 0, 0), 5.0) == 0.0

    def test_linear_in_score_init(self):
        counts = rr.KeywordCounts(5, 4, 2)
        assert rr.rerank_score(counts, 10.0) == pytest.approx(
            2 * rr.rerank_score(counts, 5.0)
        )

    def test_random_draws_match_formula(self):
        rng = np.random.default_rng(3)
        for _ in range(2000):
            c = int(rng.integers(0, 9))
            t = int(rng.integers(0, 9))
            m = int(rng.integers(0, min(c, t) + 1))
            s = float(rng.uniform(0, 50))
            got = rr.rerank_score(rr.KeywordCounts(c, t, m), s)
            want = 0.0 if c == 0 or t == 0 else (m / c) * (m / t) * s
            assert got == pytest.approx(want, rel=1e-12, abs=0)


class TestRerank:
    def hits(self, *scores):
        return [
            ScoredDocument(doc_id=f"d{i}", score_init=s, rank=i)
            for i, s in enumerate(scores, start=1)
        ]

    def test_overlapping_title_first(self):
        claim = tagged("the ancient castle stands")
        hits = self.hits(3.0, 3.0)
        titles = {"d1": "weather report tomorrow", "d2": "the ancient castle"}
        out = rr.rerank(claim, hits, titles)
        assert [h.doc_id for h in out] == ["d2", "d1"]
        assert out[0].f_rank > 0 and out[1].f_rank == 0.0

    def test_all_zero_keeps_original_order(self):
        claim = tagged("ancient castle")
        hits = self.hits(3.0, 2.0, 1.0)
        titles = {"d1": "x", "d2": "y", "d3": "z"}
        out = rr.rerank(claim, hits, titles)
        assert [h.doc_id for h in out] == ["d1", "d2", "d3"]
        assert all(h.f_rank == 0.0 for h in out)

    def test_single_hit(self):
        claim = tagged("ancient castle")
        out = rr.rerank(claim, self.hits(2.0), {"d1": "ancient castle"})
        assert len(out) == 1
        assert out[0].f_rank == pytest.approx(2.0)

    def test_missing_title_warns_and_zeroes(self, caplog):
        claim = tagged("ancient castle")
        with caplog.at_level("WARNING"):
            out = rr.rerank(claim, self.hits(2.0), {})
        assert out[0].f_rank == 0.0
        assert "no title" in caplog.text

    def test_membership_never_changes(self):
        claim = tagged("ancient castle harbor")
        hits = self.hits(5.0, 4.0, 3.0, 2.0)
        titles = {f"d{i}": t for i, t in enumerate(
            ["ancient castle", "harbor", "castle harbor", "nothing"], start=1)}
        out = rr.rerank(claim, hits, titles)
        assert {h.doc_id for h in out} == {h.doc_id for h in hits}
        assert [h.rank for h in out] == [1, 2, 3, 4]

    def test_argsort_invariant_under_scaling(self):
        claim = tagged("ancient castle harbor winter")
        rng = np.random.default_rng(11)
        hits = self.hits(*rng.uniform(0.5, 9.0, size=6))
        titles = {
            "d1": "ancient castle",
            "d2": "harbor winter news",
            "d3": "the castle of winter",
            "d4": "irrelevant title",
            "d5": "ancient harbor castle winter",
            "d6": "castle",
        }
        base = rr.rerank(claim, hits, titles)
        scaled_hits = [
            ScoredDocument(h.doc_id, h.score_init * 37.5, h.rank) for h in hits
        ]
        scaled = rr.rerank(claim, scaled_hits, titles)
        assert [h.doc_id for h in base] == [h.doc_id for h in scaled]
