"""Document model, corpus loading, case manifests, and corpus statistics.

Input is pre-structured JSON, one document per file (PDF/OCR conversion is
out of scope; extraction from PDF loses exactly the features this engine
scores on). The schema is documented in the README and mirrored by
``document_to_dict`` / ``document_from_dict``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from . import citesim
from .citesim import ReferenceRecord
from .errors import (
    DuplicateDocId,
    EmptyCorpus,
    InvariantViolation,
    MalformedInput,
    UnknownDocId,
    UnresolvedDocument,
)
from .folding import fold, word_spans

TOKEN_KINDS = frozenset({"identifier", "number", "operator", "structural"})

CASE_LABELS = frozenset(
    {
        "legitimate_reuse",
        "retracted",
        "plagiarism",
        "translation",
        "topical_relatedness",
        "distribution_stopped",
        "identical",
        "unclear",
        "compilation",
    }
)

# Earlier documents outside the corpus (e.g. lecture notes never indexed)
# are carried in manifests with this id prefix and no content.
EXTERNAL_ID_PREFIX = "ext:"

MANIFEST_FILENAME = "manifest.json"


@dataclass(frozen=True)
class MathToken:
    kind: str
    value: str


@dataclass(frozen=True)
class Formula:
    raw: str
    tokens: tuple[MathToken, ...]
    position: int  # word index into body_text


@dataclass(frozen=True)
class CitationMarker:
    position: int  # word index into body_text
    reference_ordinal: int  # index into Document.references


@dataclass(frozen=True)
class Document:
    id: str
    title: str
    authors: tuple[str, ...]
    publication_year: int
    language: str
    abstract_text: str
    body_text: str
    journal: str | None = None
    series: str | None = None
    publisher: str | None = None
    formulae: tuple[Formula, ...] = ()
    references: tuple[ReferenceRecord, ...] = ()
    citation_markers: tuple[CitationMarker, ...] = ()

    def body_word_count(self) -> int:
        return len(word_spans(self.body_text))


@dataclass(frozen=True)
class CaseManifest:
    case_id: int
    later_doc: str
    earlier_docs: tuple[str, ...]
    label: str
    notes: str = ""


@dataclass
class Corpus:
    documents: dict[str, Document] = field(default_factory=dict)
    manifests: tuple[CaseManifest, ...] = ()

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self) -> Iterator[Document]:
        return iter(self.documents.values())

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self.documents

    def get(self, doc_id: str) -> Document:
        try:
            return self.documents[doc_id]
        except KeyError:
            raise UnknownDocId(doc_id) from None

    def ids(self) -> list[str]:
        return list(self.documents)


def _require(data: dict, key: str, kind, where: str):
    if key not in data:
        raise MalformedInput(f"{where}.{key}", "missing required field")
    value = data[key]
    if kind is int and isinstance(value, bool):
        raise MalformedInput(f"{where}.{key}", "expected an integer")
    if not isinstance(value, kind):
        raise MalformedInput(f"{where}.{key}", f"expected {kind.__name__}")
    return value


def _optional_str(data: dict, key: str, where: str) -> str | None:
    value = data.get(key)
    if value is None:
        return None
    if not isinstance(value, str):
        raise MalformedInput(f"{where}.{key}", "expected string")
    return value


def _parse_token(entry, where: str) -> MathToken:
    if not isinstance(entry, dict):
        raise MalformedInput(where, "expected object with kind/value")
    kind = _require(entry, "kind", str, where)
    value = _require(entry, "value", str, where)
    if kind not in TOKEN_KINDS:
        raise InvariantViolation(f"{where}.kind", f"{kind!r} not in {sorted(TOKEN_KINDS)}")
    return MathToken(kind, value)


def _parse_formula(entry, where: str) -> Formula:
    if not isinstance(entry, dict):
        raise MalformedInput(where, "expected formula object")
    raw = _require(entry, "raw", str, where)
    tokens_raw = entry.get("tokens", [])
    if not isinstance(tokens_raw, list):
        raise MalformedInput(f"{where}.tokens", "expected list")
    tokens = tuple(
        _parse_token(tok, f"{where}.tokens[{i}]") for i, tok in enumerate(tokens_raw)
    )
    if raw and not tokens:
        raise InvariantViolation(f"{where}.tokens", "empty token list for nonempty raw formula")
    position = _require(entry, "position", int, where)
    return Formula(raw=raw, tokens=tokens, position=position)


def document_from_dict(data: dict, where: str = "document") -> Document:
    """Build and validate a Document from its JSON form.

    Raises MalformedInput for schema problems and InvariantViolation for
    domain-rule violations; both name the offending field.
    """
    if not isinstance(data, dict):
        raise MalformedInput(where, "expected JSON object")

    doc_id = _require(data, "id", str, where)
    if not doc_id:
        raise InvariantViolation(f"{where}.id", "must be nonempty")
    title = _require(data, "title", str, where)
    authors_raw = _require(data, "authors", list, where)
    for i, author in enumerate(authors_raw):
        if not isinstance(author, str):
            raise MalformedInput(f"{where}.authors[{i}]", "expected string")
    year = _require(data, "year", int, where)
    if not 1800 <= year <= 2100:
        raise InvariantViolation(f"{where}.year", f"{year} outside [1800, 2100]")
    language = _require(data, "language", str, where)
    if not language:
        raise InvariantViolation(f"{where}.language", "must be nonempty")
    abstract = _require(data, "abstract", str, where)
    body = _require(data, "body", str, where)

    body_words = len(word_spans(body))

    formulae_raw = data.get("formulae", [])
    if not isinstance(formulae_raw, list):
        raise MalformedInput(f"{where}.formulae", "expected list")
    formulae = []
    prev_pos = 0
    for i, entry in enumerate(formulae_raw):
        f = _parse_formula(entry, f"{where}.formulae[{i}]")
        if f.position < prev_pos:
            raise InvariantViolation(
                f"{where}.formulae[{i}].position",
                f"{f.position} decreases below preceding position {prev_pos}",
            )
        if f.position > body_words:
            raise InvariantViolation(
                f"{where}.formulae[{i}].position",
                f"{f.position} beyond body length {body_words}",
            )
        prev_pos = f.position
        formulae.append(f)

    references_raw = data.get("references", [])
    if not isinstance(references_raw, list):
        raise MalformedInput(f"{where}.references", "expected list")
    references = []
    for i, entry in enumerate(references_raw):
        if not isinstance(entry, dict):
            raise MalformedInput(f"{where}.references[{i}]", "expected object")
        raw = _require(entry, "raw", str, f"{where}.references[{i}]")
        if not raw:
            raise InvariantViolation(f"{where}.references[{i}].raw", "must be nonempty")
        references.append(citesim.reference_from_json(raw, entry.get("normalized")))

    citations_raw = data.get("citations", [])
    if not isinstance(citations_raw, list):
        raise MalformedInput(f"{where}.citations", "expected list")
    markers = []
    for i, entry in enumerate(citations_raw):
        if not isinstance(entry, dict):
            raise MalformedInput(f"{where}.citations[{i}]", "expected object")
        pos = _require(entry, "position", int, f"{where}.citations[{i}]")
        ref = _require(entry, "ref", int, f"{where}.citations[{i}]")
        if not 0 <= ref < len(references):
            raise InvariantViolation(
                f"{where}.citations[{i}].ref",
                f"ordinal {ref} does not index the {len(references)} references",
            )
        if not 0 <= pos <= body_words:
            raise InvariantViolation(
                f"{where}.citations[{i}].position",
                f"{pos} beyond body length {body_words}",
            )
        markers.append(CitationMarker(position=pos, reference_ordinal=ref))

    return Document(
        id=doc_id,
        title=title,
        authors=tuple(authors_raw),
        journal=_optional_str(data, "journal", where),
        series=_optional_str(data, "series", where),
        publisher=_optional_str(data, "publisher", where),
        publication_year=year,
        language=language,
        abstract_text=abstract,
        body_text=body,
        formulae=tuple(formulae),
        references=tuple(references),
        citation_markers=tuple(markers),
    )


def document_to_dict(doc: Document) -> dict:
    data = {
        "id": doc.id,
        "title": doc.title,
        "authors": list(doc.authors),
        "year": doc.publication_year,
        "language": doc.language,
        "abstract": doc.abstract_text,
        "body": doc.body_text,
        "formulae": [
            {
                "raw": f.raw,
                "tokens": [{"kind": t.kind, "value": t.value} for t in f.tokens],
                "position": f.position,
            }
            for f in doc.formulae
        ],
        "references": [citesim.reference_to_json(r) for r in doc.references],
        "citations": [
            {"position": m.position, "ref": m.reference_ordinal}
            for m in doc.citation_markers
        ],
    }
    for key, value in (
        ("journal", doc.journal),
        ("series", doc.series),
        ("publisher", doc.publisher),
    ):
        if value is not None:
            data[key] = value
    return data


def load_document(path: str | Path) -> Document:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedInput(str(path), str(exc)) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(str(path), f"invalid JSON: {exc}") from None
    return document_from_dict(data, where=path.name)


def save_document(doc: Document, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(document_to_dict(doc), ensure_ascii=False, indent=2, sort_keys=True),
        encoding="utf-8",
    )


def load_manifest(path: str | Path, known_ids: Iterable[str]) -> list[CaseManifest]:
    """Load case manifests, resolving referenced ids against ``known_ids``.

    Ids prefixed ``ext:`` denote earlier documents outside the corpus and
    skip resolution.
    """
    path = Path(path)
    known = set(known_ids)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise MalformedInput(str(path), str(exc)) from None
    except json.JSONDecodeError as exc:
        raise MalformedInput(str(path), f"invalid JSON: {exc}") from None
    if not isinstance(data, list):
        raise MalformedInput(str(path), "manifest must be a JSON array")

    def resolve(doc_id: str, where: str) -> str:
        if doc_id.startswith(EXTERNAL_ID_PREFIX):
            return doc_id
        if doc_id not in known:
            raise UnresolvedDocument(doc_id)
        return doc_id

    manifests = []
    for i, entry in enumerate(data):
        where = f"{path.name}[{i}]"
        if not isinstance(entry, dict):
            raise MalformedInput(where, "expected object")
        case_id = _require(entry, "case", int, where)
        later = resolve(_require(entry, "later", str, where), where)
        earlier_raw = _require(entry, "earlier", list, where)
        earlier = []
        for j, e in enumerate(earlier_raw):
            if not isinstance(e, str):
                raise MalformedInput(f"{where}.earlier[{j}]", "expected string")
            earlier.append(resolve(e, f"{where}.earlier[{j}]"))
        if later in earlier:
            raise InvariantViolation(
                f"{where}.later", f"{later!r} also listed as an earlier document"
            )
        label = _require(entry, "label", str, where)
        if label not in CASE_LABELS:
            raise MalformedInput(f"{where}.label", f"{label!r} not in {sorted(CASE_LABELS)}")
        notes = entry.get("notes", "")
        if not isinstance(notes, str):
            raise MalformedInput(f"{where}.notes", "expected string")
        manifests.append(
            CaseManifest(
                case_id=case_id,
                later_doc=later,
                earlier_docs=tuple(earlier),
                label=label,
                notes=notes,
            )
        )
    return manifests


def load_corpus(directory: str | Path) -> Corpus:
    """Load every ``*.json`` document in ``directory`` plus the optional
    ``manifest.json``. File order does not matter; ids must be unique."""
    directory = Path(directory)
    if not directory.is_dir():
        raise MalformedInput(str(directory), "not a directory")
    documents: dict[str, Document] = {}
    manifest_path = None
    for path in sorted(directory.glob("*.json")):
        if path.name == MANIFEST_FILENAME:
            manifest_path = path
            continue
        doc = load_document(path)
        if doc.id in documents:
            raise DuplicateDocId(doc.id)
        documents[doc.id] = doc
    corpus = Corpus(documents=documents)
    if manifest_path is not None:
        corpus.manifests = tuple(load_manifest(manifest_path, documents))
    return corpus


@dataclass(frozen=True)
class StatsSummary:
    """Frequency tables over a corpus plus rank/frequency pairs ready for
    log-scale plotting."""

    documents: int
    journal_counts: dict[str, int]
    author_counts: dict[str, int]
    year_counts: dict[int, int]

    def journal_rank_frequency(self) -> list[tuple[int, int]]:
        return _rank_frequency(self.journal_counts)

    def author_rank_frequency(self) -> list[tuple[int, int]]:
        return _rank_frequency(self.author_counts)

    def count_histogram(self, table: dict[str, int]) -> dict[int, int]:
        """How many keys occur with each count, e.g. {6: 2, 1: 76}."""
        return dict(Counter(table.values()))

    def to_dict(self) -> dict:
        return {
            "documents": self.documents,
            "journals": dict(sorted(self.journal_counts.items())),
            "authors": dict(sorted(self.author_counts.items())),
            "years": {str(y): c for y, c in sorted(self.year_counts.items())},
            "journal_rank_frequency": self.journal_rank_frequency(),
            "author_rank_frequency": self.author_rank_frequency(),
        }


def _rank_frequency(table: dict[str, int]) -> list[tuple[int, int]]:
    counts = sorted(table.values(), reverse=True)
    return [(rank, count) for rank, count in enumerate(counts, start=1)]


def corpus_stats(corpus: Corpus | Iterable[Document]) -> StatsSummary:
    """Journal, author, and year frequency tables.

    Journal and author strings are trimmed and case-folded before
    counting; no author disambiguation beyond that.
    """
    docs = list(corpus)
    if not docs:
        raise EmptyCorpus()
    journals: Counter[str] = Counter()
    authors: Counter[str] = Counter()
    years: Counter[int] = Counter()
    for doc in docs:
        if doc.journal is not None and doc.journal.strip():
            journals[fold(doc.journal.strip())] += 1
        for author in doc.authors:
            if author.strip():
                authors[fold(author.strip())] += 1
        years[doc.publication_year] += 1
    return StatsSummary(
        documents=len(docs),
        journal_counts=dict(journals),
        author_counts=dict(authors),
        year_counts=dict(years),
    )
