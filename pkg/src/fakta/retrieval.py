"""Embedded inverted-index search engine with eleven ranking models.

The index is immutable once built and safe for concurrent searches. Scores
are computed in 64-bit floats with a fixed accumulation order (query-term
order) so results are reproducible across runs. Only body tokens are
indexed; titles are kept for the re-ranking stage.

Model formulas (the classic literature versions, hyperparameters exposed):

  bm25          idf(t)*tf*(k1+1) / (tf + k1*(1-b+b*dl/avgdl)),
                idf = ln(1 + (N-df+0.5)/(df+0.5))
  classic       sqrt(tf) * (1+ln(N/(df+1)))^2 / sqrt(dl)
  dfi           e = dl*ctf/T; log2(1 + (tf-e)/sqrt(e)) if tf > e else 0
  dfr_h3/dfr_z  basic model I(F) with after-effect B:
                inf = tfn*log2(1 + (N+1)/(ctf+0.5)); gain = (ctf+1)/(df*(tfn+1))
                H3: tfn = (tf + mu*ctf/T)*avgdl/(dl + mu)
                Z:  tfn = tf*((1+avgdl)/(1+dl))^z
  ib_ll/ib_spl  lambda = df/N (df=N degenerates to N/(N+1)),
                H2 tfn = tf*log2(1 + avgdl/dl)
                LL:  -ln(lambda/(lambda+tfn))
                SPL: -ln((lambda^(tfn/(tfn+1)) - lambda)/(1-lambda))
  lm_dirichlet  ln(1 + tf/(mu*p)) + ln(mu/(dl+mu)), p = ctf/T
  lm_jelinek    ln(1 + ((1-lam)/lam)*(tf/dl)/p)
"""

from __future__ import annotations

import json
import math
import zlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import DocumentNotFoundError, EmptyQueryError, IndexBuildError
from .querygen import Query
from .textanalysis import tokenize

_MAGIC = b"FAKTAIDX"
_VERSION = 1

VARIANTS = (
    "bm25",
    "classic",
    "dfi",
    "dfr_h3",
    "dfr_z",
    "ib_ll",
    "ib_spl",
    "lm_dirichlet",
    "lm_jelinek",
)


@dataclass(frozen=True)
class DocumentRecord:
    doc_id: str
    title: str
    body: str
    source_domain: str = ""


@dataclass(frozen=True)
class ScoredDocument:
    doc_id: str
    score_init: float
    rank: int
    f_rank: float | None = None


@dataclass(frozen=True)
class IndexStats:
    doc_count: int
    total_tokens: int
    avg_doc_len: float
    df: dict[str, int] = field(repr=False)
    ctf: dict[str, int] = field(repr=False)


@dataclass(frozen=True)
class RetrievalModel:
    """One of the supported ranking models plus its hyperparameters."""

    variant: str
    params: tuple[tuple[str, float], ...] = ()

    def param(self, key: str) -> float:
        for k, v in self.params:
            if k == key:
                return v
        raise KeyError(key)

    @property
    def name(self) -> str:
        if not self.params:
            return self.variant
        inner = ",".join(f"{k}={v:g}" for k, v in self.params)
        return f"{self.variant}({inner})"


def bm25(k1: float = 1.2, b: float = 0.75) -> RetrievalModel:
    if k1 < 0:
        raise ValueError("k1 must be >= 0")
    if not 0 <= b <= 1:
        raise ValueError("b must be in [0, 1]")
    return RetrievalModel("bm25", (("k1", k1), ("b", b)))


def classic_tfidf() -> RetrievalModel:
    return RetrievalModel("classic")


def dfi() -> RetrievalModel:
    return RetrievalModel("dfi")


def dfr_h3(mu: float = 800.0) -> RetrievalModel:
    if mu <= 0:
        raise ValueError("mu must be > 0")
    return RetrievalModel("dfr_h3", (("mu", mu),))


def dfr_z(z: float = 0.30) -> RetrievalModel:
    if not 0 < z < 0.5:
        raise ValueError("z must be in (0, 0.5)")
    return RetrievalModel("dfr_z", (("z", z),))


def ib_ll() -> RetrievalModel:
    return RetrievalModel("ib_ll")


def ib_spl() -> RetrievalModel:
    return RetrievalModel("ib_spl")


def lm_dirichlet(mu: float = 2000.0) -> RetrievalModel:
    if mu <= 0:
        raise ValueError("mu must be > 0")
    return RetrievalModel("lm_dirichlet", (("mu", mu),))


def lm_jelinek(lam: float = 0.10) -> RetrievalModel:
    if not 0 < lam < 1:
        raise ValueError("lambda must be in (0, 1)")
    return RetrievalModel("lm_jelinek", (("lam", lam),))


def table_models() -> list[RetrievalModel]:
    """The eleven model configurations the engine is benchmarked with."""
    return [
        bm25(),
        classic_tfidf(),
        dfi(),
        dfr_h3(),
        dfr_z(),
        ib_ll(),
        ib_spl(),
        lm_dirichlet(),
        lm_jelinek(0.05),
        lm_jelinek(0.10),
        lm_jelinek(0.20),
    ]


def parse_model(spec: str) -> RetrievalModel:
    """Parse CLI model strings: "dfr_z", "lm_jelinek:0.05", "bm25:k1=1.5,b=0.6"."""
    name, _, arg = spec.strip().partition(":")
    name = name.lower()
    factories = {
        "bm25": bm25,
        "classic": classic_tfidf,
        "dfi": dfi,
        "dfr_h3": dfr_h3,
        "dfr_z": dfr_z,
        "ib_ll": ib_ll,
        "ib_spl": ib_spl,
        "lm_dirichlet": lm_dirichlet,
        "lm_jelinek": lm_jelinek,
    }
    if name not in factories:
        raise ValueError(f"unknown retrieval model {name!r}; choose from {VARIANTS}")
    if not arg:
        return factories[name]()
    kwargs = {}
    positional = []
    for piece in arg.split(","):
        key, eq, val = piece.partition("=")
        if eq:
            kwargs[key.strip()] = float(val)
        else:
            positional.append(float(piece))
    return factories[name](*positional, **kwargs)


def index_tokens(text: str) -> list[str]:
    """Normalized word tokens of a text (punctuation excluded)."""
    return [t.normalized for t in tokenize(text) if t.is_word]


class Index:
    """Immutable inverted index over document bodies."""

    def __init__(
        self,
        records: list[DocumentRecord],
        postings: dict[str, list[tuple[int, int]]],
        doc_len: list[int],
    ):
        self._records = records
        self._by_id = {r.doc_id: i for i, r in enumerate(records)}
        self._postings = postings
        self._doc_len = doc_len
        total = sum(doc_len)
        n = len(records)
        self.stats = IndexStats(
            doc_count=n,
            total_tokens=total,
            avg_doc_len=(total / n) if n else 0.0,
            df={t: len(p) for t, p in postings.items()},
            ctf={t: sum(tf for _, tf in p) for t, p in postings.items()},
        )

    def __len__(self) -> int:
        return len(self._records)

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self._by_id

    @property
    def doc_ids(self) -> list[str]:
        return [r.doc_id for r in self._records]

    def record(self, doc_id: str) -> DocumentRecord:
        try:
            return self._records[self._by_id[doc_id]]
        except KeyError:
            raise DocumentNotFoundError(f"doc_id {doc_id!r} not in index") from None

    def doc_length(self, doc_id: str) -> int:
        return self._doc_len[self._require(doc_id)]

    def term_frequency(self, term: str, doc_id: str) -> int:
        idx = self._require(doc_id)
        for d, tf in self._postings.get(term, ()):
            if d == idx:
                return tf
        return 0

    def postings(self, term: str) -> list[tuple[int, int]]:
        return self._postings.get(term, [])

    def titles(self) -> dict[str, str]:
        return {r.doc_id: r.title for r in self._records}

    def _require(self, doc_id: str) -> int:
        if doc_id not in self._by_id:
            raise DocumentNotFoundError(f"doc_id {doc_id!r} not in index")
        return self._by_id[doc_id]

    # -- persistence: internal versioned binary (magic + zlib'd JSON) -------

    def save(self, directory: str | Path) -> Path:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        payload = {
            "records": [
                [r.doc_id, r.title, r.body, r.source_domain] for r in self._records
            ],
            "postings": {t: p for t, p in self._postings.items()},
            "doc_len": self._doc_len,
        }
        blob = zlib.compress(
            json.dumps(payload, sort_keys=True, ensure_ascii=False).encode("utf-8"), 9
        )
        out = directory / "index.bin"
        with open(out, "wb") as fh:
            fh.write(_MAGIC)
            fh.write(_VERSION.to_bytes(2, "little"))
            fh.write(blob)
        return out

    @classmethod
    def load(cls, directory: str | Path) -> "Index":
        path = Path(directory) / "index.bin"
        raw = path.read_bytes()
        if raw[: len(_MAGIC)] != _MAGIC:
            raise IndexBuildError(f"{path} is not an index file")
        version = int.from_bytes(raw[len(_MAGIC) : len(_MAGIC) + 2], "little")
        if version != _VERSION:
            raise IndexBuildError(f"unsupported index version {version}")
        payload = json.loads(zlib.decompress(raw[len(_MAGIC) + 2 :]))
        records = [DocumentRecord(*row) for row in payload["records"]]
        postings = {
            t: [(int(d), int(tf)) for d, tf in p] for t, p in payload["postings"].items()
        }
        return cls(records, postings, [int(x) for x in payload["doc_len"]])


def build_index(docs: Iterable[DocumentRecord]) -> Index:
    """Build an immutable index; duplicate doc_ids and empty bodies fail."""
    records: list[DocumentRecord] = []
    postings: dict[str, list[tuple[int, int]]] = {}
    doc_len: list[int] = []
    seen: set[str] = set()
    for rec in docs:
        if rec.doc_id in seen:
            raise IndexBuildError(f"duplicate doc_id {rec.doc_id!r}")
        if not rec.body:
            raise IndexBuildError(f"doc {rec.doc_id!r} has an empty body")
        seen.add(rec.doc_id)
        idx = len(records)
        records.append(rec)
        tokens = index_tokens(rec.body)
        doc_len.append(len(tokens))
        counts: dict[str, int] = {}
        for tok in tokens:
            counts[tok] = counts.get(tok, 0) + 1
        for term, tf in counts.items():
            postings.setdefault(term, []).append((idx, tf))
    return Index(records, postings, doc_len)


def load_corpus_jsonl(path: str | Path) -> list[DocumentRecord]:
    """Corpus ingest format: one JSON object per line with doc_id, title,
    body, source_domain."""
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                records.append(
                    DocumentRecord(
                        doc_id=obj["doc_id"],
                        title=obj.get("title", ""),
                        body=obj["body"],
                        source_domain=obj.get("source_domain", ""),
                    )
                )
            except (json.JSONDecodeError, KeyError) as exc:
                raise IndexBuildError(f"{path}:{lineno}: bad corpus line: {exc}") from exc
    return records


# ---------------------------------------------------------------------------
# Scoring
# ---------------------------------------------------------------------------


def term_score(
    model: RetrievalModel,
    tf: int,
    dl: int,
    df: int,
    ctf: int,
    doc_count: int,
    total_tokens: int,
    avg_doc_len: float,
) -> float:
    """Closed-form contribution of one query term occurring tf times in a
    document of length dl. tf = 0 contributes exactly 0 for every model."""
    if tf <= 0 or df <= 0 or ctf <= 0:
        return 0.0
    n, t_total, avgdl = doc_count, total_tokens, avg_doc_len
    v = model.variant

    if v == "bm25":
        k1, b = model.param("k1"), model.param("b")
        idf = math.log(1.0 + (n - df + 0.5) / (df + 0.5))
        return idf * tf * (k1 + 1.0) / (tf + k1 * (1.0 - b + b * dl / avgdl))

    if v == "classic":
        idf = 1.0 + math.log(n / (df + 1.0))
        return math.sqrt(tf) * idf * idf / math.sqrt(dl)

    if v == "dfi":
        expected = dl * ctf / t_total
        if tf <= expected:
            return 0.0
        return math.log2(1.0 + (tf - expected) / math.sqrt(expected))

    if v in ("dfr_h3", "dfr_z"):
        if v == "dfr_h3":
            mu = model.param("mu")
            tfn = (tf + mu * ctf / t_total) * avgdl / (dl + mu)
        else:
            z = model.param("z")
            tfn = tf * ((1.0 + avgdl) / (1.0 + dl)) ** z
        info = tfn * math.log2(1.0 + (n + 1.0) / (ctf + 0.5))
        gain = (ctf + 1.0) / (df * (tfn + 1.0))
        return gain * info

    if v in ("ib_ll", "ib_spl"):
        lam = df / n if df < n else n / (n + 1.0)
        tfn = tf * math.log2(1.0 + avgdl / dl)
        if v == "ib_ll":
            return -math.log(lam / (lam + tfn))
        return -math.log((lam ** (tfn / (tfn + 1.0)) - lam) / (1.0 - lam))

    if v == "lm_dirichlet":
        mu = model.param("mu")
        p_coll = ctf / t_total
        return math.log(1.0 + tf / (mu * p_coll)) + math.log(mu / (dl + mu))

    if v == "lm_jelinek":
        lam = model.param("lam")
        p_coll = ctf / t_total
        return math.log(1.0 + ((1.0 - lam) / lam) * (tf / dl) / p_coll)

    raise ValueError(f"unknown model variant {model.variant!r}")


def _query_terms(query: Query | Sequence[str]) -> list[str]:
    terms = list(query.terms) if isinstance(query, Query) else [str(t) for t in query]
    return list(dict.fromkeys(terms))


def score(
    model: RetrievalModel, query: Query | Sequence[str], doc_id: str, index: Index
) -> float:
    """Model score of one document for a query; absent terms contribute 0."""
    idx = index._require(doc_id)
    dl = index._doc_len[idx]
    stats = index.stats
    total = 0.0
    for term in _query_terms(query):
        tf = index.term_frequency(term, doc_id)
        if tf == 0:
            continue
        total += term_score(
            model,
            tf,
            dl,
            stats.df[term],
            stats.ctf[term],
            stats.doc_count,
            stats.total_tokens,
            stats.avg_doc_len,
        )
    return total


def search(
    index: Index, query: Query | Sequence[str], model: RetrievalModel, k: int
) -> list[ScoredDocument]:
    """Top-k documents by model score, descending; ties break on doc_id.

    Documents sharing no query term never appear. Fewer than k come back
    when fewer match; an empty query is an error.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    terms = _query_terms(query)
    if not terms:
        raise EmptyQueryError("cannot search with an empty query")
    if len(index) == 0:
        return []
    stats = index.stats
    scores: dict[int, float] = {}
    for term in terms:
        postings = index.postings(term)
        if not postings:
            continue
        df = stats.df[term]
        ctf = stats.ctf[term]
        for doc_idx, tf in postings:
            contribution = term_score(
                model,
                tf,
                index._doc_len[doc_idx],
                df,
                ctf,
                stats.doc_count,
                stats.total_tokens,
                stats.avg_doc_len,
            )
            scores[doc_idx] = scores.get(doc_idx, 0.0) + contribution
    ranked = sorted(
        scores.items(), key=lambda item: (-item[1], index._records[item[0]].doc_id)
    )
    return [
        ScoredDocument(doc_id=index._records[idx].doc_id, score_init=s, rank=rank)
        for rank, (idx, s) in enumerate(ranked[:k], start=1)
    ]
