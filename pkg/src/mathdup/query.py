"""Fielded boolean query language for corpus screening.

Syntax: `field:value` filters, quoted phrases, `&`/`|` connectives, `!`
negation (only valid alongside a positive conjunct), parentheses, year
ranges `py:2007-2018`, and trailing-star prefix wildcards. Adjacent terms
conjoin implicitly, so `overlap identical` equals `overlap & identical`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Union

from .errors import InvariantViolation, ParseError, UnsupportedField
from .folding import fold, fold_words

if TYPE_CHECKING:
    from .corpus import Corpus, Document

QUERY_FIELDS = frozenset({"py", "ab", "so", "se", "pu", "an", "all"})

_YEAR_RE = re.compile(r"^\d{4}$")
_YEAR_RANGE_RE = re.compile(r"^(\d{4})-(\d{4})$")
_WORD_STOP = set(' \t\n\r()&|!":')


@dataclass(frozen=True)
class TermNode:
    field: str
    text: str


@dataclass(frozen=True)
class PhraseNode:
    field: str
    text: str


@dataclass(frozen=True)
class WildcardNode:
    field: str
    prefix: str


@dataclass(frozen=True)
class YearRangeNode:
    low: int
    high: int


@dataclass(frozen=True)
class NotNode:
    child: "QueryNode"


@dataclass(frozen=True)
class AndNode:
    children: tuple["QueryNode", ...]


@dataclass(frozen=True)
class OrNode:
    children: tuple["QueryNode", ...]


QueryNode = Union[TermNode, PhraseNode, WildcardNode, YearRangeNode, NotNode, AndNode, OrNode]


@dataclass(frozen=True)
class _Tok:
    kind: str  # word, quoted, lparen, rparen, amp, pipe, bang, colon, end
    text: str
    pos: int  # char index into the query string


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


def _lex(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "(":
            toks.append(_Tok("lparen", ch, i))
            i += 1
        elif ch == ")":
            toks.append(_Tok("rparen", ch, i))
            i += 1
        elif ch == "&":
            toks.append(_Tok("amp", ch, i))
            i += 1
        elif ch == "|":
            toks.append(_Tok("pipe", ch, i))
            i += 1
        elif ch == "!":
            toks.append(_Tok("bang", ch, i))
            i += 1
        elif ch == ":":
            toks.append(_Tok("colon", ch, i))
            i += 1
        elif ch == '"':
            end = text.find('"', i + 1)
            if end < 0:
                raise ParseError(
                    "unterminated phrase",
                    offset=_byte_offset(text, i),
                    expected=('"',),
                )
            toks.append(_Tok("quoted", text[i + 1 : end], i))
            i = end + 1
        else:
            start = i
            while i < n and text[i] not in _WORD_STOP:
                i += 1
            toks.append(_Tok("word", text[start:i], start))
    toks.append(_Tok("end", "", n))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _lex(text)
        self.pos = 0

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def advance(self) -> _Tok:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str, tok: _Tok, expected: Iterable[str]) -> ParseError:
        return ParseError(
            message, offset=_byte_offset(self.text, tok.pos), expected=tuple(expected)
        )

    def parse(self) -> QueryNode:
        tok = self.peek()
        if tok.kind == "end":
            raise self.fail("empty query", tok, ("term", "phrase", "("))
        node = self.or_expr()
        tok = self.peek()
        if tok.kind != "end":
            raise self.fail(f"unexpected {tok.text!r}", tok, ("&", "|", "end of query"))
        return node

    def or_expr(self) -> QueryNode:
        parts = [self.and_expr()]
        while self.peek().kind == "pipe":
            self.advance()
            parts.append(self.and_expr())
        if len(parts) == 1:
            return parts[0]
        return OrNode(tuple(parts))

    def and_expr(self) -> QueryNode:
        conjuncts: list[QueryNode] = []
        bang_pos: list[int] = []
        conjuncts.append(self.conjunct(bang_pos))
        while True:
            tok = self.peek()
            if tok.kind == "amp":
                self.advance()
                conjuncts.append(self.conjunct(bang_pos))
            elif tok.kind in ("word", "quoted", "lparen", "bang"):
                # adjacency is an implicit AND
                conjuncts.append(self.conjunct(bang_pos))
            else:
                break
        if all(isinstance(c, NotNode) for c in conjuncts):
            pos = bang_pos[0] if bang_pos else self.peek().pos
            raise ParseError(
                "negation needs a positive conjunct",
                offset=_byte_offset(self.text, pos),
                expected=("term", "phrase", "("),
            )
        if len(conjuncts) == 1:
            return conjuncts[0]
        return AndNode(tuple(conjuncts))

    def conjunct(self, bang_pos: list[int]) -> QueryNode:
        tok = self.peek()
        if tok.kind == "bang":
            bang_pos.append(tok.pos)
            self.advance()
            return NotNode(self.unary())
        return self.unary()

    def unary(self) -> QueryNode:
        tok = self.peek()
        if tok.kind == "lparen":
            self.advance()
            node = self.or_expr()
            closing = self.peek()
            if closing.kind != "rparen":
                raise self.fail("unbalanced parenthesis", closing, (")",))
            self.advance()
            return node
        if tok.kind == "quoted":
            self.advance()
            return PhraseNode("all", tok.text)
        if tok.kind == "word":
            self.advance()
            if self.peek().kind == "colon":
                self.advance()
                return self.field_value(tok)
            return self.bare_term(tok, "all")
        raise self.fail(f"unexpected {tok.text or 'end of query'!r}", tok, ("term", "phrase", "(", "!"))

    def field_value(self, field_tok: _Tok) -> QueryNode:
        field = field_tok.text.lower()
        if field not in QUERY_FIELDS:
            raise UnsupportedField(
                f"unknown query field {field_tok.text!r}; expected one of "
                + ", ".join(sorted(QUERY_FIELDS))
            )
        tok = self.peek()
        if tok.kind == "quoted":
            self.advance()
            if field == "py":
                raise self.fail("py takes a year or year range", tok, ("YYYY", "YYYY-YYYY"))
            return PhraseNode(field, tok.text)
        if tok.kind != "word":
            raise self.fail("missing field value", tok, ("value", "phrase"))
        self.advance()
        if field == "py":
            return self.year_value(tok)
        return self.bare_term(tok, field)

    def year_value(self, tok: _Tok) -> QueryNode:
        if _YEAR_RE.match(tok.text):
            year = int(tok.text)
            return YearRangeNode(year, year)
        m = _YEAR_RANGE_RE.match(tok.text)
        if not m:
            raise self.fail(
                f"bad year value {tok.text!r}", tok, ("YYYY", "YYYY-YYYY")
            )
        low, high = int(m.group(1)), int(m.group(2))
        if low > high:
            raise self.fail(
                f"year range {tok.text!r} runs backwards", tok, ("YYYY-YYYY with low <= high",)
            )
        return YearRangeNode(low, high)

    def bare_term(self, tok: _Tok, field: str) -> QueryNode:
        text = tok.text
        if text.endswith("*"):
            prefix = text.rstrip("*")
            if not prefix:
                raise self.fail("wildcard needs a prefix", tok, ("prefix*",))
            return WildcardNode(field, prefix)
        return TermNode(field, text)


def parse_query(text: str) -> QueryNode:
    """Parse a query string. ParseError carries the byte offset of the
    offending token and the token kinds that were expected there."""
    return _Parser(text).parse()


def query_to_text(node: QueryNode) -> str:
    """Render a parsed query back to source form; reparsing the result
    yields an equal tree."""
    return _render(node, top=True)


def _render(node: QueryNode, top: bool = False) -> str:
    if isinstance(node, TermNode):
        return node.text if node.field == "all" else f"{node.field}:{node.text}"
    if isinstance(node, WildcardNode):
        body = f"{node.prefix}*"
        return body if node.field == "all" else f"{node.field}:{body}"
    if isinstance(node, PhraseNode):
        body = f'"{node.text}"'
        return body if node.field == "all" else f"{node.field}:{body}"
    if isinstance(node, YearRangeNode):
        if node.low == node.high:
            return f"py:{node.low}"
        return f"py:{node.low}-{node.high}"
    if isinstance(node, NotNode):
        child = _render(node.child)
        if isinstance(node.child, (AndNode, OrNode)):
            return f"!({child})"
        return f"!{child}"
    if isinstance(node, AndNode):
        parts = []
        for child in node.children:
            text = _render(child)
            # a nested conjunction would silently flatten without parens
            if isinstance(child, (OrNode, AndNode)):
                text = f"({text})"
            parts.append(text)
        return " & ".join(parts)
    if isinstance(node, OrNode):
        body = " | ".join(_render(c) for c in node.children)
        return body if top else f"({body})"
    raise InvariantViolation("query", f"unknown node {node!r}")


def _field_words(doc: "Document", field: str) -> list[str]:
    if field == "ab":
        return fold_words(doc.abstract_text)
    if field == "so":
        return fold_words(doc.journal or "")
    if field == "pu":
        return fold_words(doc.publisher or "")
    if field == "all":
        parts = [
            doc.title,
            doc.abstract_text,
            doc.body_text,
            doc.journal or "",
            doc.publisher or "",
            " ".join(doc.authors),
        ]
        return fold_words(" \n ".join(parts))
    raise InvariantViolation("query", f"field {field!r} has no word view")


def _doc_matches_leaf(node: QueryNode, doc: "Document") -> bool:
    if isinstance(node, YearRangeNode):
        return node.low <= doc.publication_year <= node.high
    if isinstance(node, TermNode):
        if node.field == "an":
            return doc.id == node.text
        if node.field == "se":
            return doc.series is not None and fold(doc.series) == fold(node.text)
        return fold(node.text) in _field_words(doc, node.field)
    if isinstance(node, WildcardNode):
        prefix = fold(node.prefix)
        if node.field == "an":
            return doc.id.startswith(node.prefix)
        if node.field == "se":
            return doc.series is not None and fold(doc.series).startswith(prefix)
        return any(w.startswith(prefix) for w in _field_words(doc, node.field))
    if isinstance(node, PhraseNode):
        if node.field in ("an", "se"):
            return _doc_matches_leaf(TermNode(node.field, node.text), doc)
        needle = fold_words(node.text)
        if not needle:
            return False
        hay = _field_words(doc, node.field)
        span = len(needle)
        return any(hay[i : i + span] == needle for i in range(len(hay) - span + 1))
    raise InvariantViolation("query", f"not a leaf: {node!r}")


def matches_document(node: QueryNode, doc: "Document") -> bool:
    """Per-document predicate; the reference semantics for the evaluator."""
    if isinstance(node, AndNode):
        positives = [c for c in node.children if not isinstance(c, NotNode)]
        negatives = [c for c in node.children if isinstance(c, NotNode)]
        if not positives:
            raise InvariantViolation("query", "conjunction with no positive part")
        return all(matches_document(c, doc) for c in positives) and not any(
            matches_document(c.child, doc) for c in negatives
        )
    if isinstance(node, OrNode):
        return any(matches_document(c, doc) for c in node.children)
    if isinstance(node, NotNode):
        raise InvariantViolation("query", "bare negation cannot be evaluated")
    return _doc_matches_leaf(node, doc)


def evaluate_query(node: QueryNode, corpus: "Corpus") -> set[str]:
    """Set-algebra evaluation over the whole corpus: leaves scan into id
    sets, connectives intersect, union, and subtract."""
    if isinstance(node, AndNode):
        positives = [c for c in node.children if not isinstance(c, NotNode)]
        negatives = [c for c in node.children if isinstance(c, NotNode)]
        if not positives:
            raise InvariantViolation("query", "conjunction with no positive part")
        result = evaluate_query(positives[0], corpus)
        for child in positives[1:]:
            result &= evaluate_query(child, corpus)
        for child in negatives:
            result -= evaluate_query(child.child, corpus)
        return result
    if isinstance(node, OrNode):
        result: set[str] = set()
        for child in node.children:
            result |= evaluate_query(child, corpus)
        return result
    if isinstance(node, NotNode):
        raise InvariantViolation("query", "bare negation cannot be evaluated")
    return {doc.id for doc in corpus if _doc_matches_leaf(node, doc)}


def run_query(text: str, corpus: "Corpus") -> list[str]:
    """Parse and evaluate; ids come back sorted for stable output."""
    return sorted(evaluate_query(parse_query(text), corpus))
