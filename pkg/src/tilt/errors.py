"""Exception types shared across the toolkit."""


class TiltError(Exception):
    """Base class for all toolkit errors."""


class ParseError(TiltError):
    """Input is not a well-formed document.

    Raised for malformed JSON (with the byte offset of the failure),
    for fields of the wrong primitive kind (with the dotted path), and
    for missing top-level building blocks. Content problems such as bad
    formats or empty obligatory fields are the validator's business and
    never raise here.
    """

    def __init__(self, message: str, *, path: str | None = None, offset: int | None = None):
        super().__init__(message)
        self.path = path
        self.offset = offset


class FieldTypeError(ParseError):
    """A field holds a value of the wrong primitive kind."""


class MissingBlockError(ParseError):
    """A required top-level building block is absent."""


class FormatError(TiltError):
    """A scaffold argument violates its format rule."""


class PathError(TiltError):
    """A field path string cannot be parsed."""


class RulesetError(TiltError):
    """A ruleset is malformed (duplicate code, uncompilable pattern)."""


class VocabError(TiltError):
    """A vocabulary definition is malformed or self-contradictory."""


class ValidationFailed(TiltError):
    """A write was rejected because validation found violations."""

    def __init__(self, report):
        super().__init__("document failed validation")
        self.report = report


class NotFound(TiltError):
    """The requested document or version does not exist."""


class BadFilter(TiltError):
    """A query filter is malformed."""


class BadUrl(TiltError):
    """A webhook target is not an absolute HTTP(S) URL."""


class StoreError(TiltError):
    """The hub's persistent log cannot be read or written."""
