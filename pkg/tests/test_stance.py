import json

import numpy as np
import pytest

from fakta import stance as st
from fakta.errors import EmptyTextError, Level2UntrainableWarning, ModelMismatchError
from fakta.fixtures import make_toy_stance_dataset


@pytest.fixture(scope="module")
def toy_data():
    return make_toy_stance_dataset(10, seed=0)


@pytest.fixture(scope="module")
def toy_model(toy_data):
    return st.train(toy_data, lr=0.5, epochs=200, l2=1e-4, seed=0)


class TestFeaturize:
    def test_identical_texts_cosine_one(self):
        x = st.featurize("the cat sat", "the cat sat")
        cosine = x[2 * st.DEFAULT_FEATURES.n_buckets]
        assert cosine == pytest.approx(1.0, abs=1e-12)

    def test_disjoint_cosine_zero(self):
        x = st.featurize("alpha beta gamma", "delta epsilon zeta")
        cosine = x[2 * st.DEFAULT_FEATURES.n_buckets]
        assert cosine == 0.0

    def test_byte_identical_across_calls(self):
        a = st.featurize("Castles stand.", "The ancient castle stands firm.")
        b = st.featurize("Castles stand.", "The ancient castle stands firm.")
        assert a.tobytes() == b.tobytes()

    def test_dimension(self):
        x = st.featurize("a claim", "a document")
        assert x.shape == (st.DEFAULT_FEATURES.dim,)
        assert np.all(np.isfinite(x))

    def test_empty_text_rejected(self):
        with pytest.raises(EmptyTextError):
            st.featurize("", "doc")
        with pytest.raises(EmptyTextError):
            st.featurize("claim", "   ")


class TestStanceDistribution:
    def test_composition_law(self):
        dist = st.compose(0.8, (0.5, 0.25, 0.25))
        flat = dist.flattened()
        assert flat == pytest.approx(
            {"agree": 0.4, "disagree": 0.2, "discuss": 0.2, "unrelated": 0.2}
        )

    def test_flat_sums_to_one(self):
        dist = st.compose(0.37, (0.2, 0.5, 0.3))
        assert sum(dist.flattened().values()) == pytest.approx(1.0, abs=1e-9)

    def test_invalid_conditionals(self):
        with pytest.raises(ValueError):
            st.StanceDistribution(0.5, 0.5, 0.5, 0.5)

    def test_dominant_tie_break_order(self):
        dist = st.compose(1.0, (0.4, 0.4, 0.2))
        assert dist.dominant() == "agree"

    def test_from_flat_roundtrip(self):
        dist = st.distribution_from_flat(0.4, 0.2, 0.2, 0.2)
        assert dist.p_related == pytest.approx(0.8)
        assert dist.p("agree") == pytest.approx(0.4)

    def test_from_flat_zero_related(self):
        dist = st.distribution_from_flat(0.0, 0.0, 0.0, 1.0)
        assert dist.p_related == 0.0
        assert dist.p_agree == pytest.approx(1 / 3)


class TestPredict:
    def test_zero_weights_uniform(self):
        model = st.StanceModel.zeros()
        dist = st.predict_stance(model, "a claim", "a document")
        assert dist.p_related == pytest.approx(0.5)
        assert dist.p_agree == pytest.approx(1 / 3)
        assert dist.p_disagree == pytest.approx(1 / 3)

    def test_paraphrase_is_related(self, toy_model):
        claim = "The ancient castle opened in 1901."
        doc = "The ancient castle opened in 1901. This is indeed correct and verified."
        dist = st.predict_stance(toy_model, claim, doc)
        assert dist.p("unrelated") < 0.5
        assert dist.dominant() in ("agree", "discuss")

    def test_flattened_sums_over_random_models(self):
        rng = np.random.default_rng(0)
        config = st.FeatureConfig(n_buckets=64)
        for _ in range(200):
            model = st.StanceModel(
                w1=rng.normal(size=config.dim),
                b1=float(rng.normal()),
                w2=rng.normal(size=(3, config.dim)),
                b2=rng.normal(size=3),
                feature_config=config,
            )
            dist = st.predict_stance(model, "some claim text", "some document text")
            assert sum(dist.flattened().values()) == pytest.approx(1.0, abs=1e-9)
            assert all(v >= 0 for v in dist.flattened().values())

    def test_config_mismatch(self, toy_model):
        other = st.FeatureConfig(n_buckets=128)
        with pytest.raises(ModelMismatchError):
            st.predict_stance(toy_model, "c", "d", feature_config=other)

    def test_argmax_invariance_logit_identity(self):
        # scaling features by c and weights by 1/c leaves all outputs equal
        rng = np.random.default_rng(42)
        config = st.FeatureConfig(n_buckets=32)
        x = rng.normal(size=config.dim)
        w1, b1 = rng.normal(size=config.dim), 0.3
        w2, b2 = rng.normal(size=(3, config.dim)), rng.normal(size=3)
        c = 7.5
        p1 = st._sigmoid(w1 @ x + b1)
        p1_scaled = st._sigmoid((w1 / c) @ (x * c) + b1)
        assert p1 == pytest.approx(p1_scaled, rel=1e-12)
        s = st._softmax(w2 @ x + b2)
        s_scaled = st._softmax((w2 / c) @ (x * c) + b2)
        assert s == pytest.approx(s_scaled, rel=1e-10)


class TestSentences:
    def test_singleton_doc(self, toy_model):
        claim = "The ancient castle opened in 1901."
        doc = "The castle is indeed correct and confirmed."
        rats = st.score_sentences(toy_model, claim, doc)
        assert len(rats) == 1
        direct = st.predict_stance(toy_model, claim, doc)
        assert rats[0].dist.flattened() == pytest.approx(direct.flattened())

    def test_k_sentences_in_order(self, toy_model):
        doc = "First fact here. Second fact there. Third fact anywhere."
        rats = st.score_sentences(toy_model, "Some claim about facts.", doc)
        assert len(rats) == 3
        assert [r.sentence.start for r in rats] == sorted(r.sentence.start for r in rats)

    def test_duplicate_sentences_identical(self, toy_model):
        doc = "The harbor is open. The harbor is open."
        rats = st.score_sentences(toy_model, "The harbor is open.", doc)
        assert rats[0].dist == rats[1].dist

    def test_sort_by_label(self, toy_model):
        doc = (
            "The railway opened in 1901 and this is confirmed as true. "
            "Critics call the story false and a hoax. "
            "Officials are reportedly investigating whether it opened."
        )
        rats = st.score_sentences(toy_model, "The railway opened in 1901.", doc)
        by_disagree = st.sort_rationales(rats, "disagree")
        ps = [r.dist.p("disagree") for r in by_disagree]
        assert ps == sorted(ps, reverse=True)

    def test_sort_stable_on_ties(self):
        dist = st.compose(1.0, (0.5, 0.3, 0.2))
        mk = lambda i: st.SentenceRationale(
            sentence=None, text=f"s{i}", dist=dist, dominant="agree"
        )
        rats = [mk(0), mk(1), mk(2)]
        assert st.sort_rationales(rats, "agree") == rats

    def test_sort_empty(self):
        assert st.sort_rationales([], "agree") == []

    def test_unknown_label(self):
        with pytest.raises(KeyError):
            st.sort_rationales([], "maybe")


def finite_difference(f, params, eps=1e-6):
    grad = np.zeros_like(params)
    flat = params.ravel()
    g = grad.ravel()
    for i in range(flat.size):
        orig = flat[i]
        flat[i] = orig + eps
        hi = f()
        flat[i] = orig - eps
        lo = f()
        flat[i] = orig
        g[i] = (hi - lo) / (2 * eps)
    return grad


class TestGradients:
    def test_level1_matches_central_differences(self):
        rng = np.random.default_rng(1)
        for _ in range(30):
            n, d = int(rng.integers(2, 8)), int(rng.integers(3, 12))
            x = rng.normal(size=(n, d))
            y = rng.integers(0, 2, size=n).astype(float)
            w = rng.normal(size=d)
            b = float(rng.normal())
            l2 = float(rng.uniform(0, 0.1))
            aw, ab = st.level1_grad(w, b, x, y, l2)
            nw = finite_difference(lambda: st.level1_loss(w, b, x, y, l2), w)
            err = np.abs(aw - nw) / np.maximum(1e-8, np.abs(aw) + np.abs(nw))
            assert err.max() < 1e-4
            b_arr = np.array([b])
            nb = finite_difference(
                lambda: st.level1_loss(w, float(b_arr[0]), x, y, l2), b_arr
            )
            assert abs(ab - nb[0]) / max(1e-8, abs(ab) + abs(nb[0])) < 1e-4

    def test_level2_matches_central_differences(self):
        rng = np.random.default_rng(2)
        for _ in range(30):
            n, d = int(rng.integers(2, 8)), int(rng.integers(3, 10))
            x = rng.normal(size=(n, d))
            y = rng.integers(0, 3, size=n)
            w = rng.normal(size=(3, d))
            b = rng.normal(size=3)
            l2 = float(rng.uniform(0, 0.1))
            aw, ab = st.level2_grad(w, b, x, y, l2)
            nw = finite_difference(lambda: st.level2_loss(w, b, x, y, l2), w)
            err = np.abs(aw - nw) / np.maximum(1e-8, np.abs(aw) + np.abs(nw))
            assert err.max() < 1e-4
            nb = finite_difference(lambda: st.level2_loss(w, b, x, y, l2), b)
            errb = np.abs(ab - nb) / np.maximum(1e-8, np.abs(ab) + np.abs(nb))
            assert errb.max() < 1e-4


class TestTraining:
    def test_toy_accuracy(self, toy_model, toy_data):
        assert st.training_accuracy(toy_model, toy_data) >= 0.95

    def test_zero_epochs_zero_weights(self, toy_data):
        model = st.train(toy_data[:8], epochs=0)
        assert not model.w1.any() and not model.w2.any()
        dist = st.predict_stance(model, "a claim", "a doc")
        assert dist.p_related == pytest.approx(0.5)

    def test_duplicated_dataset_same_weights_full_batch(self, toy_data):
        # full-batch means the duplicated gradient is the same mean; weights
        # agree up to float summation order
        small = toy_data[:12]
        m1 = st.train(small, lr=0.1, epochs=20, seed=0, batch_size=None)
        m2 = st.train(small + small, lr=0.1, epochs=20, seed=0, batch_size=None)
        assert np.allclose(m1.w1, m2.w1, rtol=1e-9, atol=1e-12)
        assert np.allclose(m1.w2, m2.w2, rtol=1e-9, atol=1e-12)
        assert m1.b1 == pytest.approx(m2.b1, rel=1e-9, abs=1e-12)

    def test_seeded_reproducibility_minibatch(self, toy_data):
        m1 = st.train(toy_data, lr=0.2, epochs=5, seed=7, batch_size=8)
        m2 = st.train(toy_data, lr=0.2, epochs=5, seed=7, batch_size=8)
        assert np.array_equal(m1.w1, m2.w1)
        assert np.array_equal(m1.w2, m2.w2)

    def test_monotone_loss_small_lr(self, toy_data):
        config = st.DEFAULT_FEATURES
        x = np.stack([st.featurize(e.claim, e.document, config) for e in toy_data])
        y = np.array([e.label != "unrelated" for e in toy_data], dtype=float)
        w = np.zeros(config.dim)
        b = 0.0
        losses = []
        for _ in range(50):
            losses.append(st.level1_loss(w, b, x, y, 1e-4))
            gw, gb = st.level1_grad(w, b, x, y, 1e-4)
            w -= 0.01 * gw
            b -= 0.01 * gb
        for earlier, later in zip(losses, losses[1:]):
            assert later <= earlier + 1e-12

    def test_no_related_examples_warns(self):
        data = [
            st.StanceExample("claim one", "unrelated babble", "unrelated"),
            st.StanceExample("claim two", "more babble", "unrelated"),
        ]
        with pytest.warns(Level2UntrainableWarning):
            model = st.train(data, epochs=2)
        assert not model.w2.any()

    def test_empty_dataset(self):
        with pytest.raises(ValueError):
            st.train([])


class TestSerialization:
    def test_roundtrip(self, toy_model, tmp_path):
        path = tmp_path / "model.bin"
        toy_model.save(path)
        loaded = st.StanceModel.load(path)
        assert np.array_equal(loaded.w1, toy_model.w1)
        assert np.array_equal(loaded.w2, toy_model.w2)
        assert loaded.config_hash == toy_model.config_hash
        d1 = st.predict_stance(toy_model, "a claim", "a doc about a claim")
        d2 = st.predict_stance(loaded, "a claim", "a doc about a claim")
        assert d1 == d2

    def test_byte_identical_retraining(self, toy_data, tmp_path):
        p1, p2 = tmp_path / "m1.bin", tmp_path / "m2.bin"
        st.train(toy_data, epochs=10, seed=0).save(p1)
        st.train(toy_data, epochs=10, seed=0).save(p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_corrupted_file(self, tmp_path):
        p = tmp_path / "bad.bin"
        p.write_bytes(b"definitely not a model")
        with pytest.raises(ModelMismatchError):
            st.StanceModel.load(p)

    def test_jsonl_loader(self, tmp_path):
        p = tmp_path / "train.jsonl"
        rows = [
            {"claim": "c1", "document": "d1", "stance": "agree"},
            {"claim": "c2", "document": "d2", "stance": "unrelated"},
        ]
        p.write_text("\n".join(json.dumps(r) for r in rows))
        examples = st.load_stance_jsonl(p)
        assert len(examples) == 2
        assert examples[0].label == "agree"

    def test_jsonl_bad_label(self, tmp_path):
        p = tmp_path / "train.jsonl"
        p.write_text('{"claim": "c", "document": "d", "stance": "maybe"}')
        with pytest.raises(ValueError) as exc:
            st.load_stance_jsonl(p)
        assert ":1" in str(exc.value)
