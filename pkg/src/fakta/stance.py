"""Two-level stance classification with sentence-level rationales.

Level 1 is a binary logistic model separating related from unrelated
document/claim pairs; level 2 is a 3-way softmax over agree, disagree and
discuss. Prediction always runs both levels and composes them softly:
p(unrelated) = 1 - p_related and p(label) = p_related * p(label | related),
so the flattened distribution over the four labels sums to one.

Features are a fixed-width vector: hashed unigram bags of words for claim
and document (BLAKE2 hashing, stable across runs and platforms), a TF-IDF
cosine similarity, a keyword-overlap ratio, and two length features.

Models serialize to a versioned binary carrying the feature-config hash;
loading or predicting with a mismatched config fails loudly rather than
silently mis-featurizing.
"""

from __future__ import annotations

import hashlib
import json
import math
import warnings
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import EmptyTextError, Level2UntrainableWarning, ModelMismatchError
from .rerank import keyword_counts
from .textanalysis import Sentence, Token, pos_tag, split_sentences, tokenize

STANCE_LABELS = ("agree", "disagree", "discuss", "unrelated")
LEVEL2_LABELS = ("agree", "disagree", "discuss")

_MAGIC = b"FAKTASTM"
_FORMAT_VERSION = 1


@dataclass(frozen=True)
class FeatureConfig:
    n_buckets: int = 4096
    hash_seed: int = 0
    version: int = 1

    @property
    def dim(self) -> int:
        return 2 * self.n_buckets + 4

    def config_hash(self) -> str:
        payload = json.dumps(
            {"n_buckets": self.n_buckets, "hash_seed": self.hash_seed, "version": self.version},
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


DEFAULT_FEATURES = FeatureConfig()


def _bucket(token: str, seed: int, n_buckets: int) -> int:
    digest = hashlib.blake2b(
        token.encode("utf-8"), digest_size=8, key=seed.to_bytes(8, "little")
    ).digest()
    return int.from_bytes(digest, "little") % n_buckets


def _hashed_bow(tokens: list[str], config: FeatureConfig) -> np.ndarray:
    vec = np.zeros(config.n_buckets)
    for tok, count in Counter(tokens).items():
        vec[_bucket(tok, config.hash_seed, config.n_buckets)] += math.log1p(count)
    norm = np.linalg.norm(vec)
    if norm > 0:
        vec /= norm
    return vec


def _tfidf_cosine(claim_tokens: list[str], doc_tokens: list[str]) -> float:
    """Cosine over tf-idf vectors with pair-level smoothed idf, in [0, 1]."""
    if not claim_tokens or not doc_tokens:
        return 0.0
    a, b = Counter(claim_tokens), Counter(doc_tokens)
    dot = na = nb = 0.0
    # sorted union keeps the summation order process-independent
    for term in sorted(set(a) | set(b)):
        df = (term in a) + (term in b)
        idf = math.log(1.0 + 2.0 / (1.0 + df))
        wa, wb = a[term] * idf, b[term] * idf
        dot += wa * wb
        na += wa * wa
        nb += wb * wb
    if na == 0.0 or nb == 0.0:
        return 0.0
    return min(1.0, max(0.0, dot / math.sqrt(na * nb)))


def featurize(
    claim: str, document: str, config: FeatureConfig = DEFAULT_FEATURES
) -> np.ndarray:
    """Deterministic feature vector for a (claim, document) pair."""
    if not claim.strip() or not document.strip():
        raise EmptyTextError("claim and document must be non-empty")
    claim_toks = tokenize(claim)
    doc_toks = tokenize(document)
    claim_words = [t.normalized for t in claim_toks if t.is_word]
    doc_words = [t.normalized for t in doc_toks if t.is_word]

    counts = keyword_counts(pos_tag(claim_toks), pos_tag(doc_toks))
    overlap = counts.match_kw / counts.claim_kw if counts.claim_kw else 0.0

    parts = [
        _hashed_bow(claim_words, config),
        _hashed_bow(doc_words, config),
        np.array(
            [
                _tfidf_cosine(claim_words, doc_words),
                overlap,
                math.log1p(len(claim_words)),
                math.log1p(len(doc_words)),
            ]
        ),
    ]
    return np.concatenate(parts)


@dataclass(frozen=True)
class StanceDistribution:
    """Hierarchical stance probabilities plus their flattened view."""

    p_related: float
    p_agree: float
    p_disagree: float
    p_discuss: float

    def __post_init__(self):
        cond_sum = self.p_agree + self.p_disagree + self.p_discuss
        if abs(cond_sum - 1.0) > 1e-9:
            raise ValueError(f"conditionals sum to {cond_sum}, not 1")
        if not 0.0 <= self.p_related <= 1.0:
            raise ValueError("p_related must be a probability")

    def p(self, label: str) -> float:
        if label == "unrelated":
            return 1.0 - self.p_related
        if label == "agree":
            return self.p_related * self.p_agree
        if label == "disagree":
            return self.p_related * self.p_disagree
        if label == "discuss":
            return self.p_related * self.p_discuss
        raise KeyError(label)

    def flattened(self) -> dict[str, float]:
        return {label: self.p(label) for label in STANCE_LABELS}

    def dominant(self) -> str:
        flat = self.flattened()
        return max(STANCE_LABELS, key=lambda l: (flat[l], -STANCE_LABELS.index(l)))


def distribution_from_flat(
    agree: float, disagree: float, discuss: float, unrelated: float
) -> StanceDistribution:
    """Rebuild the hierarchical view from four flattened probabilities."""
    total = agree + disagree + discuss + unrelated
    if total <= 0:
        raise ValueError("flattened probabilities must have positive mass")
    # complement of the normalized unrelated mass stays in [0, 1] exactly
    p_related = 1.0 - unrelated / total
    related_mass = agree + disagree + discuss
    if related_mass > 0:
        conds = (
            agree / related_mass,
            disagree / related_mass,
            discuss / related_mass,
        )
        s = sum(conds)  # guard float drift in the invariant check
        conds = tuple(c / s for c in conds)
    else:
        conds = (1 / 3, 1 / 3, 1 / 3)
    return StanceDistribution(p_related, *conds)


@dataclass(frozen=True)
class SentenceRationale:
    sentence: Sentence
    text: str
    dist: StanceDistribution
    dominant: str


@dataclass
class StanceModel:
    """Linear two-level stance scorer (one implementation of the scorer
    contract; anything mapping (claim, document) to a StanceDistribution
    can replace it)."""

    w1: np.ndarray
    b1: float
    w2: np.ndarray  # shape (3, D), rows in LEVEL2_LABELS order
    b2: np.ndarray  # shape (3,)
    feature_config: FeatureConfig = DEFAULT_FEATURES
    seed: int = 0
    config_hash: str = field(default="")

    def __post_init__(self):
        if not self.config_hash:
            self.config_hash = self.feature_config.config_hash()
        d = self.feature_config.dim
        if self.w1.shape != (d,) or self.w2.shape != (3, d) or self.b2.shape != (3,):
            raise ModelMismatchError("weight shapes do not match the feature config")
        if self.config_hash != self.feature_config.config_hash():
            raise ModelMismatchError("stored config hash does not match feature config")

    @classmethod
    def zeros(cls, config: FeatureConfig = DEFAULT_FEATURES, seed: int = 0) -> "StanceModel":
        d = config.dim
        return cls(
            w1=np.zeros(d),
            b1=0.0,
            w2=np.zeros((3, d)),
            b2=np.zeros(3),
            feature_config=config,
            seed=seed,
        )

    # -- persistence --------------------------------------------------------

    def save(self, path: str | Path) -> None:
        header = json.dumps(
            {
                "format": _FORMAT_VERSION,
                "n_buckets": self.feature_config.n_buckets,
                "hash_seed": self.feature_config.hash_seed,
                "feature_version": self.feature_config.version,
                "config_hash": self.config_hash,
                "seed": self.seed,
            },
            sort_keys=True,
        ).encode("utf-8")
        with open(path, "wb") as fh:
            fh.write(_MAGIC)
            fh.write(len(header).to_bytes(4, "little"))
            fh.write(header)
            for arr in (self.w1, np.array([self.b1]), self.w2.ravel(), self.b2):
                fh.write(np.asarray(arr, dtype="<f8").tobytes())

    @classmethod
    def load(cls, path: str | Path) -> "StanceModel":
        raw = Path(path).read_bytes()
        if raw[: len(_MAGIC)] != _MAGIC:
            raise ModelMismatchError(f"{path} is not a stance model file")
        offset = len(_MAGIC)
        header_len = int.from_bytes(raw[offset : offset + 4], "little")
        offset += 4
        header = json.loads(raw[offset : offset + header_len])
        offset += header_len
        if header["format"] != _FORMAT_VERSION:
            raise ModelMismatchError(f"unsupported model format {header['format']}")
        config = FeatureConfig(
            n_buckets=header["n_buckets"],
            hash_seed=header["hash_seed"],
            version=header["feature_version"],
        )
        if header["config_hash"] != config.config_hash():
            raise ModelMismatchError("model file config hash mismatch")
        d = config.dim
        floats = np.frombuffer(raw[offset:], dtype="<f8")
        expected = d + 1 + 3 * d + 3
        if floats.size != expected:
            raise ModelMismatchError(
                f"model file has {floats.size} weights, expected {expected}"
            )
        w1 = floats[:d].copy()
        b1 = float(floats[d])
        w2 = floats[d + 1 : d + 1 + 3 * d].reshape(3, d).copy()
        b2 = floats[d + 1 + 3 * d :].copy()
        return cls(
            w1=w1, b1=b1, w2=w2, b2=b2, feature_config=config,
            seed=header["seed"], config_hash=header["config_hash"],
        )


def _sigmoid(x: np.ndarray | float) -> np.ndarray | float:
    return 1.0 / (1.0 + np.exp(-np.clip(x, -60, 60)))


def _softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - np.max(logits, axis=-1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=-1, keepdims=True)


def compose(p_related: float, conditionals: Sequence[float]) -> StanceDistribution:
    return StanceDistribution(float(p_related), *[float(c) for c in conditionals])


def predict_stance(
    model: StanceModel,
    claim: str,
    document: str,
    feature_config: FeatureConfig | None = None,
) -> StanceDistribution:
    """Soft-hierarchy prediction: level 2 always runs and is weighted by the
    level-1 relatedness probability."""
    if feature_config is not None and feature_config.config_hash() != model.config_hash:
        raise ModelMismatchError(
            "featurizer config does not match the model's recorded config"
        )
    x = featurize(claim, document, model.feature_config)
    p_related = float(_sigmoid(model.w1 @ x + model.b1))
    conditionals = _softmax(model.w2 @ x + model.b2)
    return compose(p_related, conditionals)


def score_sentences(
    model: StanceModel, claim: str, document: str
) -> list[SentenceRationale]:
    """One rationale per sentence, in document order."""
    rationales = []
    for sentence in split_sentences(document):
        text = document[sentence.start : sentence.end]
        dist = predict_stance(model, claim, text)
        rationales.append(
            SentenceRationale(
                sentence=sentence, text=text, dist=dist, dominant=dist.dominant()
            )
        )
    return rationales


def sort_rationales(
    rationales: Sequence[SentenceRationale], label: str
) -> list[SentenceRationale]:
    """Stable sort by flattened p(label), descending."""
    if label not in STANCE_LABELS:
        raise KeyError(f"unknown stance label {label!r}")
    return sorted(rationales, key=lambda r: -r.dist.p(label))


# ---------------------------------------------------------------------------
# Training: mini-batch gradient descent on cross-entropy with L2.
# The loss/gradient pairs are standalone so they can be finite-difference
# checked directly.
# ---------------------------------------------------------------------------


def level1_loss(w: np.ndarray, b: float, x: np.ndarray, y: np.ndarray, l2: float) -> float:
    """Mean binary cross-entropy of sigmoid(xw+b) against y, plus L2 on w."""
    z = x @ w + b
    # log(1+exp(z)) - y*z, computed stably
    loss = np.mean(np.logaddexp(0.0, z) - y * z)
    return float(loss + 0.5 * l2 * np.dot(w, w))


def level1_grad(
    w: np.ndarray, b: float, x: np.ndarray, y: np.ndarray, l2: float
) -> tuple[np.ndarray, float]:
    p = _sigmoid(x @ w + b)
    err = p - y
    grad_w = x.T @ err / len(y) + l2 * w
    grad_b = float(np.mean(err))
    return grad_w, grad_b


def level2_loss(
    w: np.ndarray, b: np.ndarray, x: np.ndarray, y_idx: np.ndarray, l2: float
) -> float:
    """Mean softmax cross-entropy against integer labels, plus L2 on w."""
    logits = x @ w.T + b
    shifted = logits - logits.max(axis=1, keepdims=True)
    log_probs = shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True))
    nll = -np.mean(log_probs[np.arange(len(y_idx)), y_idx])
    return float(nll + 0.5 * l2 * np.sum(w * w))


def level2_grad(
    w: np.ndarray, b: np.ndarray, x: np.ndarray, y_idx: np.ndarray, l2: float
) -> tuple[np.ndarray, np.ndarray]:
    probs = _softmax(x @ w.T + b)
    onehot = np.zeros_like(probs)
    onehot[np.arange(len(y_idx)), y_idx] = 1.0
    err = probs - onehot
    grad_w = err.T @ x / len(y_idx) + l2 * w
    grad_b = err.mean(axis=0)
    return grad_w, grad_b


@dataclass(frozen=True)
class StanceExample:
    claim: str
    document: str
    label: str

    def __post_init__(self):
        if self.label not in STANCE_LABELS:
            raise ValueError(f"unknown stance label {self.label!r}")


def load_stance_jsonl(path: str | Path) -> list[StanceExample]:
    """Training data format: JSONL with claim, document, stance fields."""
    examples = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            try:
                examples.append(
                    StanceExample(obj["claim"], obj["document"], obj["stance"])
                )
            except (KeyError, ValueError) as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from exc
    return examples


def train(
    dataset: Sequence[StanceExample | tuple[str, str, str]],
    lr: float = 0.5,
    epochs: int = 200,
    l2: float = 1e-4,
    seed: int = 0,
    batch_size: int | None = None,
    feature_config: FeatureConfig = DEFAULT_FEATURES,
) -> StanceModel:
    """Gradient-descent training of both levels.

    Level 1 sees every example with a related/unrelated binarization; level
    2 sees only the related ones. batch_size None means full batch, which
    with a fixed seed makes retraining bit-reproducible. A dataset without
    related examples leaves level 2 uniform and warns.
    """
    examples = [
        ex if isinstance(ex, StanceExample) else StanceExample(*ex) for ex in dataset
    ]
    if not examples:
        raise ValueError("dataset must be non-empty")
    x = np.stack([featurize(ex.claim, ex.document, feature_config) for ex in examples])
    y_related = np.array([ex.label != "unrelated" for ex in examples], dtype=float)
    related_rows = np.flatnonzero(y_related)

    model = StanceModel.zeros(feature_config, seed=seed)
    rng = np.random.default_rng(seed)

    w1, b1 = model.w1.copy(), model.b1
    for _ in range(epochs):
        for rows in _batches(len(examples), batch_size, rng):
            gw, gb = level1_grad(w1, b1, x[rows], y_related[rows], l2)
            w1 -= lr * gw
            b1 -= lr * gb

    w2, b2 = model.w2.copy(), model.b2.copy()
    if related_rows.size:
        x2 = x[related_rows]
        y2 = np.array(
            [LEVEL2_LABELS.index(examples[i].label) for i in related_rows], dtype=int
        )
        rng2 = np.random.default_rng(seed)
        for _ in range(epochs):
            for rows in _batches(len(y2), batch_size, rng2):
                gw, gb = level2_grad(w2, b2, x2[rows], y2[rows], l2)
                w2 -= lr * gw
                b2 -= lr * gb
    else:
        warnings.warn(
            "no related examples; level 2 left uniform",
            category=Level2UntrainableWarning,
        )

    return StanceModel(
        w1=w1, b1=float(b1), w2=w2, b2=b2, feature_config=feature_config, seed=seed
    )


def _batches(n: int, batch_size: int | None, rng: np.random.Generator):
    if batch_size is None or batch_size >= n:
        yield slice(None)
        return
    order = rng.permutation(n)
    for start in range(0, n, batch_size):
        yield order[start : start + batch_size]


def training_accuracy(model: StanceModel, dataset: Sequence[StanceExample]) -> float:
    """Share of examples whose flattened argmax matches the gold label."""
    hits = 0
    for ex in dataset:
        pred = predict_stance(model, ex.claim, ex.document).dominant()
        hits += pred == ex.label
    return hits / len(dataset)
