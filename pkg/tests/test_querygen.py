import pytest

from fakta import querygen as qg
from fakta import textanalysis as ta
from fakta.errors import CannotRelaxError, EmptyQueryError


def tagged(text):
    return ta.pos_tag(ta.tokenize(text))


def query_for(text):
    toks = tagged(text)
    return qg.generate_query(toks, ta.extract_named_entities(toks))


class TestGenerateQuery:
    def test_stopword_only_claim(self):
        with pytest.raises(EmptyQueryError):
            query_for("and then, of the those...")

    def test_fig2_claim(self):
        q = query_for("ISIS infilitrates the United States.")
        assert {"isis", "infilitrates", "united", "states"} <= set(q.terms)
        assert len(q.terms) <= 10

    def test_truncation_to_ten(self):
        claim = " ".join(
            ["alpha bridge castle desert engine forest garden harbor island jungle kettle ladder"]
        )
        q = query_for(claim)
        assert len(q.terms) == 10
        assert q.terms == tuple(claim.split()[:10])

    def test_order_is_claim_order_then_entities(self):
        toks = tagged("The brave Zubrowka army saluted General Zubrowka near Oslofjordia.")
        ents = ta.extract_named_entities(toks)
        q = qg.generate_query(toks, ents)
        # every term occurs in the claim, content words lead
        norms = {t.normalized for t in toks}
        assert all(term in norms for term in q.terms)
        origins = list(q.origins)
        if qg.ORIGIN_ENTITY in origins:
            first_entity = origins.index(qg.ORIGIN_ENTITY)
            assert all(o == qg.ORIGIN_ENTITY for o in origins[first_entity:])

    def test_no_duplicates(self):
        q = query_for("castle castle castle harbor")
        assert q.terms == ("castle", "harbor")

    def test_determinism(self):
        text = "Napoleon invaded Russia during winter."
        assert query_for(text) == query_for(text)

    def test_stopwords_removed(self):
        q = query_for("the cat is chasing the dog")
        assert "the" not in q.terms
        assert "is" not in q.terms


class TestFallbackQuery:
    def test_longest_tokens_win(self):
        toks = tagged("zz yyy xxxx wwwww")
        q = qg.fallback_query(toks, max_terms=2)
        assert set(q.terms) == {"wwwww", "xxxx"}

    def test_claim_order_preserved(self):
        toks = tagged("wwwww xxxx")
        q = qg.fallback_query(toks, max_terms=2)
        assert q.terms == ("wwwww", "xxxx")

    def test_all_stopwords_raises(self):
        with pytest.raises(EmptyQueryError):
            qg.fallback_query(tagged("the of and"))


class TestRelaxQuery:
    def test_drop_last(self):
        q = qg.Query(terms=("a", "b", "c"), origins=("content-word",) * 3)
        assert qg.relax_query(q).terms == ("a", "b")

    def test_single_term_to_empty(self):
        q = qg.Query(terms=("a",), origins=("content-word",))
        relaxed = qg.relax_query(q)
        assert relaxed.terms == ()
        with pytest.raises(CannotRelaxError):
            qg.relax_query(relaxed)

    def test_induction_to_empty(self):
        q = query_for("ISIS infilitrates the United States.")
        n = len(q)
        for _ in range(n):
            q = qg.relax_query(q)
        assert len(q) == 0

    def test_strictly_decreasing(self):
        q = query_for("brave soldiers guarded the ancient castle")
        while len(q) > 0:
            shorter = qg.relax_query(q)
            assert len(shorter) == len(q) - 1
            q = shorter
