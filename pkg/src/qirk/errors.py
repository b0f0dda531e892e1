"""Exception hierarchy shared by all qirk modules.

Every error raised for user-supplied IR text carries a source position
(character offset plus 1-based line/column) so front ends can point at
the offending token.
"""

from __future__ import annotations


class QirkError(Exception):
    """Base class for all qirk errors."""


class IrError(QirkError):
    """Base class for IR parse/validation errors; carries a source position."""

    def __init__(self, message: str, pos: int = 0, line: int = 1, col: int = 1):
        super().__init__(message)
        self.pos = pos
        self.line = line
        self.col = col

    def __str__(self) -> str:
        return f"{self.args[0]} (line {self.line}, column {self.col})"


class IrSyntaxError(IrError):
    """Token-level grammar violation."""

    def __init__(self, message, pos=0, line=1, col=1, expected=()):
        super().__init__(message, pos, line, col)
        self.expected = tuple(expected)


class TypeConflict(IrError):
    """A variable carries more than one declared datatype."""


class UnboundHeadVar(IrError):
    """A head variable never occurs in the query body."""


class DanglingQualifier(IrError):
    """A statement variable is bound with ``:=`` but never used afterwards."""


class MalformedLine(QirkError):
    """A dump line could not be ingested (also raised when every line fails)."""


class UnknownStatement(QirkError):
    """Qualifier lookup on a statement id that is not in the store."""


class ProviderFailure(QirkError):
    """An embedding provider failed; ``item_id`` names the offending record."""

    def __init__(self, message: str, item_id: str | None = None):
        super().__init__(message)
        self.item_id = item_id


class EmptyIndex(QirkError):
    """Similarity lookup against an index with no vectors of the requested kind."""


class MissingCandidates(QirkError):
    """A keyword has no usable candidate identifiers."""

    def __init__(self, keyword: str, message: str | None = None):
        super().__init__(message or f"no candidates for keyword {keyword!r}")
        self.keyword = keyword


class KindMismatch(QirkError):
    """A candidate set has the wrong kind, or a term is used in an impossible role."""


class TypeUnsupported(QirkError):
    """Aggregate requested over a datatype that does not support it."""


class TranslationFailed(QirkError):
    """All translation attempts produced unparsable IR."""

    def __init__(self, message: str, attempts=()):
        super().__init__(message)
        self.attempts = list(attempts)


class RemoteUnavailable(QirkError):
    """The remote translator endpoint could not be reached."""


class NoTemplateMatch(QirkError):
    """Offline translation found no template matching the question."""


class ConfigError(QirkError):
    """Bad configuration file or environment override."""
