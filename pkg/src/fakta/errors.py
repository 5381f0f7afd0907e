"""Exception types shared across the package."""


class FaktaError(Exception):
    """Base class for all package-specific errors."""


class LexiconFormatError(FaktaError):
    """A lexicon/gazetteer/tag-lexicon file has a malformed line."""


class EmptyQueryError(FaktaError):
    """A claim yielded no query terms, or a search got an empty query."""


class CannotRelaxError(FaktaError):
    """relax_query called on an already-empty query."""


class IndexBuildError(FaktaError):
    """Index construction failed (e.g. duplicate doc_id)."""


class DocumentNotFoundError(FaktaError):
    """A doc_id is not present in the index."""


class RegistryFormatError(FaktaError):
    """The source registry CSV has a malformed row."""


class InvalidUrlError(FaktaError):
    """A string could not be interpreted as a URL or hostname."""


class ProviderError(FaktaError):
    """An external search provider failed for one channel."""

    def __init__(self, message: str, channel: str | None = None):
        super().__init__(message)
        self.channel = channel


class EmptyTextError(FaktaError):
    """Text input was empty where non-empty text is required."""


class ModelMismatchError(FaktaError):
    """A stance model was combined with an incompatible feature config."""


class NoDocumentsError(FaktaError):
    """Aggregation over an empty document list."""


class PipelineError(FaktaError):
    """The whole pipeline failed (every enabled channel errored)."""


class FeverFormatError(FaktaError):
    """A claims JSONL file has a malformed line."""


class Level2UntrainableWarning(UserWarning):
    """Training data had no related examples; level 2 left uniform."""
