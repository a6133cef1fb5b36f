"""Exception hierarchy shared by all mathdup modules."""

from __future__ import annotations


class MathdupError(Exception):
    """Base class for user-facing errors (CLI exit code 1)."""


class MalformedInput(MathdupError):
    """Input file or payload does not match the expected schema."""

    def __init__(self, field: str, detail: str = ""):
        self.field = field
        self.detail = detail
        super().__init__(f"malformed input at {field!r}" + (f": {detail}" if detail else ""))


class InvariantViolation(MathdupError):
    """Structurally valid input that breaks a domain invariant."""

    def __init__(self, field: str, detail: str = ""):
        self.field = field
        self.detail = detail
        super().__init__(f"invariant violated at {field!r}" + (f": {detail}" if detail else ""))


class UnresolvedDocument(MathdupError):
    def __init__(self, doc_id: str):
        self.doc_id = doc_id
        super().__init__(f"document id {doc_id!r} not present in corpus")


class DuplicateDocId(MathdupError):
    def __init__(self, doc_id: str):
        self.doc_id = doc_id
        super().__init__(f"duplicate document id {doc_id!r}")


class UnknownDocId(MathdupError):
    def __init__(self, doc_id: str):
        self.doc_id = doc_id
        super().__init__(f"unknown document id {doc_id!r}")


class EmptyCorpus(MathdupError):
    def __init__(self):
        super().__init__("corpus contains no documents")


class EmptyIndex(MathdupError):
    def __init__(self):
        super().__init__("index contains no documents")


class ParseError(MathdupError):
    """Query syntax error. ``offset`` is a byte offset into the UTF-8 query."""

    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        self.offset = offset
        self.expected = tuple(expected)
        exp = f" (expected one of: {', '.join(expected)})" if expected else ""
        super().__init__(f"{message} at byte offset {offset}{exp}")


class UnsupportedField(MathdupError):
    def __init__(self, field: str):
        self.field = field
        super().__init__(f"unsupported query field {field!r}")


class MalformedTree(MathdupError):
    def __init__(self, detail: str):
        self.detail = detail
        super().__init__(f"malformed formula tree: {detail}")


class InvalidThresholds(MathdupError):
    def __init__(self, detail: str):
        self.detail = detail
        super().__init__(f"invalid thresholds: {detail}")


class StorageUnavailable(MathdupError):
    def __init__(self, path: str, detail: str = ""):
        self.path = path
        super().__init__(f"verdict storage unavailable at {path!r}" + (f": {detail}" if detail else ""))
