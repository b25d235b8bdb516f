"""Exception types shared across the package.

Class names double as stable error identifiers: the CLI prints them and the
scripting bindings surface them verbatim, so they are spelled without the
usual ``Error`` suffix.
"""


class ParatokError(Exception):
    """Base class for all errors raised by this package."""


class EmptyCorpus(ParatokError):
    """Training corpus contained no non-empty line."""


class CapTooSmall(ParatokError):
    """Vocabulary cap cannot hold the corpus alphabet plus special tokens."""


class IndexOutOfRange(ParatokError):
    """A token id does not address any vocabulary entry."""


class NotInVocabulary(ParatokError):
    """Token classification was requested for a string absent from the vocabulary."""


class ProviderFailure(ParatokError):
    """A translation provider raised while translating a token."""

    def __init__(self, token: str, cause: Exception):
        super().__init__(f"provider failed on token {token!r}: {cause}")
        self.token = token
        self.cause = cause


class MissingLexicon(ParatokError):
    """A non-pivot language has no bilingual lexicon."""


class MissingMonolingualVocab(ParatokError):
    """A language has no monolingual vocabulary to fill from."""


class CapExceededBySpecials(ParatokError):
    """Vocabulary cap cannot hold the special and language-identity tokens."""


class UnknownLanguageToken(ParatokError):
    """Dispatch was requested for a language token that is not registered."""


class ZeroDimension(ParatokError):
    """An embedding table dimension was requested with size < 1."""


class PositionOverflow(ParatokError):
    """Input sequence is longer than the position table."""


class IdOutOfRange(ParatokError):
    """An id exceeds the corresponding embedding table."""


class DimensionMismatch(ParatokError):
    """Embedding table shape does not match the vocabulary it is paired with."""


class NoWords(ParatokError):
    """Fertility was requested over a corpus column with zero words."""


class ZeroTokenSentence(ParatokError):
    """Parity encountered a sentence encoding to zero non-special tokens."""


class DegenerateZeroVector(ParatokError):
    """An embedding matrix row is all-zero, so cosine similarity is undefined."""


class NotUtf8Fatal(ParatokError):
    """More than 1% of a corpus file's bytes are invalid UTF-8."""


class ValidationError(ParatokError):
    """A configuration or argument failed validation before any work ran."""


class StageFailure(ParatokError):
    """A pipeline stage failed; the message is prefixed with the stage name."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"{stage}: {type(cause).__name__}: {cause}")
        self.stage = stage
        self.cause = cause


class RankDeficient(UserWarning):
    """Fewer nonzero eigenvalues than requested output dimensions (reported, not raised)."""
