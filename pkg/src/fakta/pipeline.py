"""End-to-end fact-check orchestration.

check() runs the full flow for one claim: tokenize and tag, build a query,
retrieve per reliability channel (internal index for the Wikipedia channel,
external provider for the media channels) with iterative query relaxation,
re-rank by title keyword overlap, analyze every document (stance +
rationales + linguistic profile, fanned out across a thread pool), average
stance per channel, and decide SUP / REF / NEI.

The verdict is driven by the basis channel (Wikipedia by default, matching
a Wikipedia-grounded evaluation); other channels are evidence context. The
config can move the basis to any channel.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Mapping, Sequence

from . import linguistics, querygen, sources, stance
from .rerank import COUNT_TOKENS, rerank as apply_rerank
from .errors import (
    CannotRelaxError,
    EmptyQueryError,
    NoDocumentsError,
    PipelineError,
    ProviderError,
)
from .querygen import Query
from .retrieval import (
    DocumentRecord,
    Index,
    RetrievalModel,
    ScoredDocument,
    dfr_z,
    parse_model,
    search,
)
from .sources import RELIABILITY_CLASSES, SourceRegistry
from .textanalysis import (
    Lexicon,
    Token,
    data_path,
    default_stopwords,
    extract_named_entities,
    load_lexicon,
    pos_tag,
    tokenize,
)

CONFIG_ENV_VAR = "FAKTA_CONFIG"
LABEL_MODES = ("2lbl", "3lbl")
VERDICT_LABELS = ("SUP", "REF", "NEI")


@dataclass(frozen=True)
class PipelineConfig:
    k: int = 5
    model: RetrievalModel = field(default_factory=dfr_z)
    nei_threshold: float = 2.0  # placeholder; tune_threshold overwrites it
    label_mode: str = "3lbl"
    max_relaxations: int | None = None  # None: relax down to one term
    channels: tuple[str, ...] = RELIABILITY_CLASSES
    basis_channel: str = "wikipedia"
    counting: str = COUNT_TOKENS
    rerank_depth: int = 20
    workers: int = 4
    word_cloud_top_n: int = 10

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.nei_threshold < 0:
            raise ValueError("nei_threshold must be >= 0")
        if self.label_mode not in LABEL_MODES:
            raise ValueError(f"label_mode must be one of {LABEL_MODES}")
        for ch in self.channels:
            if ch not in RELIABILITY_CLASSES:
                raise ValueError(f"unknown channel {ch!r}")
        if self.basis_channel not in RELIABILITY_CLASSES:
            raise ValueError(f"unknown basis channel {self.basis_channel!r}")

    def with_overrides(self, **overrides) -> "PipelineConfig":
        known = {k: v for k, v in overrides.items() if v is not None}
        if "model" in known and isinstance(known["model"], str):
            known["model"] = parse_model(known["model"])
        if "channels" in known:
            known["channels"] = tuple(known["channels"])
        return replace(self, **known)


@dataclass(frozen=True)
class Verdict:
    label: str
    agree_score: float
    disagree_score: float
    discuss_score: float
    basis_channel: str


@dataclass(frozen=True)
class DocumentAnalysis:
    hit: ScoredDocument
    record: DocumentRecord
    stance_dist: stance.StanceDistribution
    rationales: tuple[stance.SentenceRationale, ...]
    profile: linguistics.LinguisticProfile
    word_clouds: tuple[linguistics.WordCloudData, ...]


@dataclass(frozen=True)
class ChannelResult:
    channel: str
    documents: tuple[DocumentAnalysis, ...]
    aggregate: stance.StanceDistribution | None
    query_terms: tuple[str, ...]
    relaxations: int
    error: str | None = None


@dataclass(frozen=True)
class FactCheckResult:
    claim: str
    query: Query
    channels: tuple[ChannelResult, ...]
    verdict: Verdict
    timings: dict[str, float]
    diagnostics: tuple[str, ...] = ()

    def channel(self, name: str) -> ChannelResult | None:
        for ch in self.channels:
            if ch.channel == name:
                return ch
        return None


def aggregate(dists: Sequence[stance.StanceDistribution]) -> stance.StanceDistribution:
    """Arithmetic mean of flattened stance probabilities, renormalized, with
    summation in document-rank order so floats reproduce exactly."""
    if not dists:
        raise NoDocumentsError("cannot aggregate zero distributions")
    sums = {label: 0.0 for label in stance.STANCE_LABELS}
    for dist in dists:
        for label in stance.STANCE_LABELS:
            sums[label] += dist.p(label)
    n = len(dists)
    means = {label: sums[label] / n for label in stance.STANCE_LABELS}
    return stance.distribution_from_flat(
        means["agree"], means["disagree"], means["discuss"], means["unrelated"]
    )


def decide_verdict(
    agg: stance.StanceDistribution | None, top_score: float, config: PipelineConfig
) -> Verdict:
    """Verdict rule.

    3lbl: NEI when there are no documents or the best retrieval score sits
    below the threshold; otherwise compare agree vs disagree with NEI on an
    exact tie. 2lbl: SUP iff agree >= disagree (never NEI).
    """
    agree = agg.p("agree") if agg is not None else 0.0
    disagree = agg.p("disagree") if agg is not None else 0.0
    discuss = agg.p("discuss") if agg is not None else 0.0
    if config.label_mode == "2lbl":
        label = "SUP" if agree >= disagree else "REF"
    else:
        if agg is None or top_score < config.nei_threshold:
            label = "NEI"
        elif agree > disagree:
            label = "SUP"
        elif disagree > agree:
            label = "REF"
        else:
            label = "NEI"
    return Verdict(
        label=label,
        agree_score=agree,
        disagree_score=disagree,
        discuss_score=discuss,
        basis_channel=config.basis_channel,
    )


class FactChecker:
    """Holds the immutable artifacts and runs checks against them."""

    def __init__(
        self,
        index: Index,
        registry: SourceRegistry,
        stance_model: stance.StanceModel,
        lexicons: Sequence[Lexicon] | None = None,
        provider: sources.ExternalSearchProvider | None = None,
        config: PipelineConfig | None = None,
    ):
        self.index = index
        self.registry = registry
        self.stance_model = stance_model
        self.lexicons = tuple(lexicons) if lexicons is not None else default_lexicons()
        self.provider = provider
        self.config = config or PipelineConfig()
        self._stopwords = default_stopwords()

    # -- retrieval ----------------------------------------------------------

    def _issue(
        self, channel: str, query: Query, config: PipelineConfig
    ) -> tuple[list[ScoredDocument], dict[str, DocumentRecord]]:
        depth = max(config.k, config.rerank_depth)
        if channel == "wikipedia":
            hits = search(self.index, query, config.model, depth)
            records = {h.doc_id: self.index.record(h.doc_id) for h in hits}
            return hits, records
        if self.provider is None:
            raise ProviderError("no external search provider configured", channel=channel)
        return sources.external_search(
            self.provider, self.registry, query, channel, depth
        )

    def retrieve_with_relaxation(
        self,
        channel: str,
        query: Query,
        claim_tokens: Sequence[Token],
        config: PipelineConfig | None = None,
    ) -> tuple[list[ScoredDocument], dict[str, DocumentRecord], Query, int]:
        """Issue the query, relaxing one trailing term at a time on empty
        results; the first non-empty result set is re-ranked and truncated
        to top-K. Returns (hits, records, final_query, relaxations)."""
        config = config or self.config
        budget = config.max_relaxations
        if budget is None:
            budget = max(len(query) - 1, 0)
        current = query
        relaxations = 0
        while True:
            hits, records = self._issue(channel, current, config)
            if hits:
                titles = {doc_id: rec.title for doc_id, rec in records.items()}
                reranked = apply_rerank(claim_tokens, hits, titles, config.counting)
                return reranked[: config.k], records, current, relaxations
            if relaxations >= budget or len(current) <= 1:
                return [], {}, current, relaxations
            try:
                current = querygen.relax_query(current)
            except CannotRelaxError:
                return [], {}, current, relaxations
            relaxations += 1

    # -- analysis -----------------------------------------------------------

    def _analyze_document(
        self, claim: str, hit: ScoredDocument, record: DocumentRecord,
        config: PipelineConfig,
    ) -> DocumentAnalysis:
        dist = stance.predict_stance(self.stance_model, claim, record.body)
        rationales = stance.score_sentences(self.stance_model, claim, record.body)
        doc_tokens = tokenize(record.body)
        prof = linguistics.profile(doc_tokens, self.lexicons)
        clouds = tuple(
            linguistics.word_cloud(doc_tokens, lex, config.word_cloud_top_n)
            for lex in self.lexicons
        )
        return DocumentAnalysis(
            hit=hit,
            record=record,
            stance_dist=dist,
            rationales=tuple(rationales),
            profile=prof,
            word_clouds=clouds,
        )

    def _analyze_channel(
        self,
        claim: str,
        channel: str,
        hits: list[ScoredDocument],
        records: Mapping[str, DocumentRecord],
        final_query: Query,
        relaxations: int,
        config: PipelineConfig,
        pool: ThreadPoolExecutor | None,
    ) -> ChannelResult:
        pairs = [(hit, records[hit.doc_id]) for hit in hits]
        if pool is not None and len(pairs) > 1:
            analyses = list(
                pool.map(
                    lambda p: self._analyze_document(claim, p[0], p[1], config), pairs
                )
            )
        else:
            analyses = [
                self._analyze_document(claim, hit, rec, config) for hit, rec in pairs
            ]
        agg = aggregate([a.stance_dist for a in analyses]) if analyses else None
        return ChannelResult(
            channel=channel,
            documents=tuple(analyses),
            aggregate=agg,
            query_terms=final_query.terms,
            relaxations=relaxations,
        )

    # -- the full pipeline --------------------------------------------------

    def check(self, claim: str, **overrides) -> FactCheckResult:
        """Run the whole fact-check for one claim."""
        if not claim or not claim.strip():
            raise ValueError("claim must be non-empty")
        config = self.config.with_overrides(**overrides)
        timings: dict[str, float] = {}
        diagnostics: list[str] = []
        t_start = time.perf_counter()

        t0 = time.perf_counter()
        claim_tokens = pos_tag(tokenize(claim))
        entities = extract_named_entities(claim_tokens)
        try:
            query = querygen.generate_query(claim_tokens, entities, self._stopwords)
        except EmptyQueryError:
            diagnostics.append("query generation found no content words; using fallback")
            try:
                query = querygen.fallback_query(claim_tokens, self._stopwords)
            except EmptyQueryError:
                timings["query_generation"] = time.perf_counter() - t0
                timings["total"] = time.perf_counter() - t_start
                diagnostics.append("no query terms at all; returning NEI")
                empty_query = Query(terms=(), origins=())
                verdict = decide_verdict(None, 0.0, config)
                return FactCheckResult(
                    claim=claim,
                    query=empty_query,
                    channels=(),
                    verdict=verdict,
                    timings=timings,
                    diagnostics=tuple(diagnostics),
                )
        timings["query_generation"] = time.perf_counter() - t0

        t0 = time.perf_counter()
        enabled = [ch for ch in RELIABILITY_CLASSES if ch in config.channels]
        channel_inputs = {}
        for channel in enabled:
            try:
                hits, records, final_query, relaxations = self.retrieve_with_relaxation(
                    channel, query, claim_tokens, config
                )
                channel_inputs[channel] = (hits, records, final_query, relaxations, None)
            except ProviderError as exc:
                diagnostics.append(f"channel {channel} failed: {exc}")
                channel_inputs[channel] = ([], {}, query, 0, str(exc))
        timings["retrieval"] = time.perf_counter() - t0

        t0 = time.perf_counter()
        pool = ThreadPoolExecutor(max_workers=config.workers) if config.workers > 1 else None
        try:
            channels = []
            for channel in enabled:
                hits, records, final_query, relaxations, error = channel_inputs[channel]
                if error is not None:
                    channels.append(
                        ChannelResult(
                            channel=channel,
                            documents=(),
                            aggregate=None,
                            query_terms=final_query.terms,
                            relaxations=relaxations,
                            error=error,
                        )
                    )
                    continue
                channels.append(
                    self._analyze_channel(
                        claim, channel, hits, records, final_query,
                        relaxations, config, pool,
                    )
                )
        finally:
            if pool is not None:
                pool.shutdown()
        timings["analysis"] = time.perf_counter() - t0

        if channels and all(ch.error is not None for ch in channels):
            raise PipelineError(
                "every enabled channel failed: "
                + "; ".join(f"{ch.channel}: {ch.error}" for ch in channels)
            )

        t0 = time.perf_counter()
        basis = next((ch for ch in channels if ch.channel == config.basis_channel), None)
        if basis is not None and basis.documents:
            top_score = basis.documents[0].hit.score_init
            verdict = decide_verdict(basis.aggregate, top_score, config)
        else:
            verdict = decide_verdict(None, 0.0, config)
        timings["aggregation"] = time.perf_counter() - t0
        timings["total"] = time.perf_counter() - t_start

        return FactCheckResult(
            claim=claim,
            query=query,
            channels=tuple(channels),
            verdict=verdict,
            timings=timings,
            diagnostics=tuple(diagnostics),
        )


def default_lexicons() -> tuple[Lexicon, ...]:
    """The three bundled fixture lexicons (sentiment carries polarity)."""
    return (
        load_lexicon(data_path("lexicons", "subjectivity.txt"), "subjectivity"),
        load_lexicon(data_path("lexicons", "sentiment.txt"), "sentiment"),
        load_lexicon(data_path("lexicons", "wiki_bias.txt"), "wiki_bias"),
    )


# ---------------------------------------------------------------------------
# Result serialization (stable, JSON-safe; the HTTP layer reuses it)
# ---------------------------------------------------------------------------


def stance_to_dict(dist: stance.StanceDistribution) -> dict:
    return {
        "p_related": dist.p_related,
        "conditionals": {
            "agree": dist.p_agree,
            "disagree": dist.p_disagree,
            "discuss": dist.p_discuss,
        },
        "flattened": dist.flattened(),
        "dominant": dist.dominant(),
    }


def rationale_to_dict(rat: stance.SentenceRationale) -> dict:
    return {
        "start": rat.sentence.start,
        "end": rat.sentence.end,
        "text": rat.text,
        "dominant": rat.dominant,
        "scores": rat.dist.flattened(),
    }


def document_to_dict(analysis: DocumentAnalysis) -> dict:
    return {
        "doc_id": analysis.hit.doc_id,
        "rank": analysis.hit.rank,
        "score_init": analysis.hit.score_init,
        "f_rank": analysis.hit.f_rank,
        "title": analysis.record.title,
        "source_domain": analysis.record.source_domain,
        "body": analysis.record.body,
        "stance": stance_to_dict(analysis.stance_dist),
        "rationales": [rationale_to_dict(r) for r in analysis.rationales],
        "profile": {
            "scores": dict(sorted(analysis.profile.scores.items())),
            "doc_token_count": analysis.profile.doc_token_count,
        },
        "word_clouds": [
            {"lexicon": wc.lexicon, "entries": [[cue, freq] for cue, freq in wc.entries]}
            for wc in analysis.word_clouds
        ],
    }


def channel_to_dict(ch: ChannelResult) -> dict:
    return {
        "channel": ch.channel,
        "error": ch.error,
        "query_terms": list(ch.query_terms),
        "relaxations": ch.relaxations,
        "aggregate": stance_to_dict(ch.aggregate) if ch.aggregate else None,
        "documents": [document_to_dict(d) for d in ch.documents],
    }


def result_to_dict(result: FactCheckResult, include_timings: bool = True) -> dict:
    payload = {
        "claim": result.claim,
        "query": {"terms": list(result.query.terms), "origins": list(result.query.origins)},
        "verdict": {
            "label": result.verdict.label,
            "agree_score": result.verdict.agree_score,
            "disagree_score": result.verdict.disagree_score,
            "discuss_score": result.verdict.discuss_score,
            "basis_channel": result.verdict.basis_channel,
        },
        "channels": [channel_to_dict(ch) for ch in result.channels],
        "diagnostics": list(result.diagnostics),
    }
    if include_timings:
        payload["timings"] = dict(result.timings)
    return payload


# ---------------------------------------------------------------------------
# Config files: a documented TOML-like key = value format
# ---------------------------------------------------------------------------

_PATH_KEYS = ("index_dir", "registry", "stance_model", "lexicons_dir",
              "search_fixtures", "search_endpoint")


@dataclass(frozen=True)
class AppConfig:
    pipeline: PipelineConfig
    paths: dict[str, str]


def _parse_value(raw: str):
    raw = raw.strip()
    if raw.startswith("[") and raw.endswith("]"):
        inner = raw[1:-1].strip()
        if not inner:
            return []
        return [_parse_value(piece) for piece in inner.split(",")]
    if raw.startswith('"') and raw.endswith('"') and len(raw) >= 2:
        return raw[1:-1]
    if raw.lower() in ("true", "false"):
        return raw.lower() == "true"
    try:
        return int(raw)
    except ValueError:
        pass
    try:
        return float(raw)
    except ValueError:
        pass
    return raw


def parse_config_text(text: str, base_dir: Path | None = None) -> AppConfig:
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith("["):
            # section headers are cosmetic in this flat format
            if line.startswith("[") and "=" in line and not line.endswith("]"):
                raise ValueError(f"config line {lineno}: malformed section/value mix")
            continue
        key, eq, value = line.partition("=")
        if not eq:
            raise ValueError(f"config line {lineno}: expected 'key = value'")
        values[key.strip()] = _parse_value(value)

    paths = {}
    for key in _PATH_KEYS:
        if key in values:
            raw_path = str(values.pop(key))
            if base_dir is not None and key != "search_endpoint":
                raw_path = str((base_dir / raw_path).resolve()) if not os.path.isabs(raw_path) else raw_path
            paths[key] = raw_path

    pipeline_kwargs = {}
    for key in ("k", "nei_threshold", "label_mode", "max_relaxations",
                "basis_channel", "counting", "rerank_depth", "workers",
                "word_cloud_top_n"):
        if key in values:
            pipeline_kwargs[key] = values.pop(key)
    if "model" in values:
        pipeline_kwargs["model"] = parse_model(str(values.pop("model")))
    if "channels" in values:
        raw_channels = values.pop("channels")
        if isinstance(raw_channels, str):
            raw_channels = [c.strip() for c in raw_channels.split(",")]
        pipeline_kwargs["channels"] = tuple(str(c) for c in raw_channels)
    if values:
        raise ValueError(f"unknown config keys: {', '.join(sorted(map(str, values)))}")
    if "k" in pipeline_kwargs:
        pipeline_kwargs["k"] = int(pipeline_kwargs["k"])
    return AppConfig(pipeline=PipelineConfig(**pipeline_kwargs), paths=paths)


def load_app_config(path: str | Path | None = None) -> AppConfig:
    """Read a config file; falls back to the FAKTA_CONFIG environment
    variable when no path is given."""
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR)
        if not path:
            raise FileNotFoundError(
                f"no config path given and {CONFIG_ENV_VAR} is not set"
            )
    path = Path(path)
    return parse_config_text(path.read_text(encoding="utf-8"), base_dir=path.parent)


def build_checker(app_config: AppConfig) -> FactChecker:
    """Assemble a FactChecker from config paths; bundled fixtures fill in
    the registry and lexicons when unspecified."""
    paths = app_config.paths
    if "index_dir" not in paths:
        raise ValueError("config must set index_dir")
    if "stance_model" not in paths:
        raise ValueError("config must set stance_model")
    index = Index.load(paths["index_dir"])
    registry = sources.load_registry(paths.get("registry", data_path("registry.csv")))
    model = stance.StanceModel.load(paths["stance_model"])
    if "lexicons_dir" in paths:
        lex_dir = Path(paths["lexicons_dir"])
        lexicons = tuple(
            load_lexicon(p, p.stem) for p in sorted(lex_dir.glob("*.txt"))
        )
    else:
        lexicons = default_lexicons()
    provider: sources.ExternalSearchProvider | None = None
    if "search_fixtures" in paths:
        provider = sources.StubSearchProvider(paths["search_fixtures"])
    elif "search_endpoint" in paths:
        provider = sources.HttpSearchProvider(paths["search_endpoint"])
    return FactChecker(
        index=index,
        registry=registry,
        stance_model=model,
        lexicons=lexicons,
        provider=provider,
        config=app_config.pipeline,
    )
