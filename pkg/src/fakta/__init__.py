"""fakta: end-to-end claim fact checking.

Retrieval from reliability-classified sources, keyword-overlap re-ranking,
two-level stance detection with sentence rationales, lexicon-based language
profiling, and SUP/REF/NEI verdict aggregation.
"""

from .pipeline import (
    FactChecker,
    FactCheckResult,
    PipelineConfig,
    Verdict,
    aggregate,
    decide_verdict,
    result_to_dict,
)
from .querygen import Query, generate_query, relax_query
# the rerank *function* stays in its submodule: a package attribute cannot
# be both the module and the callable
from .rerank import KeywordCounts, keyword_counts, rerank_score
from .retrieval import (
    DocumentRecord,
    Index,
    RetrievalModel,
    ScoredDocument,
    build_index,
    search,
    table_models,
)
from .sources import SourceRegistry, classify_domain, external_search, load_registry
from .stance import (
    StanceDistribution,
    StanceModel,
    featurize,
    predict_stance,
    score_sentences,
    sort_rationales,
    train,
)
from .linguistics import LinguisticProfile, WordCloudData, lexicon_score, profile, word_cloud
from .textanalysis import (
    Lexicon,
    Sentence,
    Token,
    extract_named_entities,
    load_lexicon,
    pos_tag,
    split_sentences,
    tokenize,
)

__version__ = "0.1.0"

__all__ = [
    "DocumentRecord",
    "FactChecker",
    "FactCheckResult",
    "Index",
    "KeywordCounts",
    "Lexicon",
    "LinguisticProfile",
    "PipelineConfig",
    "Query",
    "RetrievalModel",
    "ScoredDocument",
    "Sentence",
    "SourceRegistry",
    "StanceDistribution",
    "StanceModel",
    "Token",
    "Verdict",
    "WordCloudData",
    "aggregate",
    "build_index",
    "classify_domain",
    "decide_verdict",
    "external_search",
    "extract_named_entities",
    "featurize",
    "generate_query",
    "keyword_counts",
    "lexicon_score",
    "load_lexicon",
    "load_registry",
    "pos_tag",
    "predict_stance",
    "profile",
    "relax_query",
    "rerank_score",
    "result_to_dict",
    "score_sentences",
    "search",
    "sort_rationales",
    "split_sentences",
    "table_models",
    "tokenize",
    "train",
    "word_cloud",
]
