"""Shared exception types."""


class CrosslexError(Exception):
    """Base class for all package errors."""


class IngestError(CrosslexError):
    """Fatal problem reading an input file."""


class CitationError(CrosslexError):
    """Citation expansion could not produce any result."""


class VocabularyError(CrosslexError):
    """Vocabulary construction failed (e.g. everything below min_count)."""


class TrainingError(CrosslexError):
    """Embedding training cannot proceed."""


class AlignmentError(CrosslexError):
    """Alignment between two spaces failed."""


class OOVTermError(CrosslexError):
    """Query term missing from the home-domain vocabulary.

    Carries up to three nearest in-vocabulary suggestions by edit distance.
    """

    def __init__(self, term: str, suggestions: list[str]):
        self.term = term
        self.suggestions = suggestions
        hint = f" (did you mean: {', '.join(suggestions)}?)" if suggestions else ""
        super().__init__(f"term not in home domain corpus: {term!r}{hint}")


class MissingArtifactError(CrosslexError):
    """A pipeline stage needs an artifact that has not been built yet.

    ``remedy`` names the CLI subcommand that produces it.
    """

    def __init__(self, message: str, remedy: str = ""):
        self.remedy = remedy
        super().__init__(message + (f" (run: {remedy})" if remedy else ""))


class LLMClientError(CrosslexError):
    """The pluggable completion client failed."""


class RatingSchemeError(CrosslexError):
    """A rating value falls outside its declared scheme."""
