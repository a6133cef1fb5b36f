"""Citation channel: noisy reference normalization, matching, bibliographic
coupling, and order-observing citation-sequence similarity.

Reference strings in scanned sources arrive with OCR damage ("On oonnected
g1'aphs"), so matching has to tolerate character noise; everything here is
built around a folded match key plus an edit-distance fallback.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .folding import fold, squash
from .lcs import lcs_ratio

if TYPE_CHECKING:
    from .corpus import Document

# Leading "[1]", "(1]", "3." style citation markers, OCR bracket confusions included.
_LEADING_MARKER_RE = re.compile(r"^\s*[\[\({]?\d{1,3}[\]\)}]?[.):]?\s*")
_YEAR_RE = re.compile(r"(?<!\d)(\d{4})(?!\d)")
# "A. Rényi", "G. UHLENBECK", "J. V. Moon" — initials-first author chunks.
_AUTHOR_CHUNK_RE = re.compile(r"^(?:[A-Za-z]\s*\.[\s-]*)+[^\W\d_][\w'’-]*$", re.UNICODE)
_AND_SPLIT_RE = re.compile(r"\s+(?:and|et|&)\s+", re.IGNORECASE)

_KEY_TOKENS = 3  # title tokens contributing to the match key


@dataclass(frozen=True)
class NormalizedReference:
    authors: tuple[str, ...]
    title_tokens: tuple[str, ...]
    year: int | None

    def is_empty(self) -> bool:
        return not self.authors and not self.title_tokens and self.year is None


@dataclass(frozen=True)
class ReferenceRecord:
    raw: str
    normalized: NormalizedReference
    match_key: str

    def formatted(self) -> str:
        """Printable form that re-normalizes to the same match key."""
        parts = []
        for surname in self.normalized.authors:
            parts.append(f"A. {surname.title()}")
        if self.normalized.title_tokens:
            parts.append(" ".join(self.normalized.title_tokens))
        if self.normalized.year is not None:
            parts.append(str(self.normalized.year))
        return ", ".join(parts) if parts else self.raw

    def comparison_tokens(self) -> tuple[str, ...]:
        n = self.normalized
        if n.is_empty():
            return tuple(squash(self.raw).split())
        return n.authors + n.title_tokens + ((str(n.year),) if n.year is not None else ())


def _clean_author_chunk(chunk: str) -> str:
    return re.sub(r"[^\w\s.'’-]", "", chunk, flags=re.UNICODE).strip()


def _extract_year(text: str) -> int | None:
    year = None
    for m in _YEAR_RE.finditer(text):
        value = int(m.group(1))
        if 1500 <= value <= 2100:
            year = value
    return year


def _rarity_ranked(tokens: tuple[str, ...]) -> list[str]:
    # Longer tokens proxy for rarer ones; the key must stay a pure function
    # of this record, so corpus-level frequencies are off the table.
    informative = [t for t in tokens if len(t) >= 3] or list(tokens)
    return sorted(informative, key=lambda t: (-len(t), t))


def _build_match_key(normalized: NormalizedReference, raw: str) -> str:
    if normalized.is_empty():
        return squash(raw).strip()
    parts = []
    if normalized.authors:
        parts.append(normalized.authors[0])
    parts.extend(sorted(_rarity_ranked(normalized.title_tokens)[:_KEY_TOKENS]))
    if normalized.year is not None:
        parts.append(str(normalized.year))
    return "|".join(parts)


def normalize_reference(raw: str) -> ReferenceRecord:
    """Heuristically split a raw reference string into authors, title
    tokens, and year, and derive its match key.

    Split on commas: leading chunks shaped like "A. Surname" are authors,
    the next chunk is the title. Unparseable strings degrade to an empty
    normalized form whose match key is the folded raw text.
    """
    body = _LEADING_MARKER_RE.sub("", raw)
    chunks = [c.strip() for c in body.split(",") if c.strip()]

    authors: list[str] = []
    title_chunk = ""
    consumed = 0
    for chunk in chunks:
        names = _AND_SPLIT_RE.split(chunk)
        cleaned = [_clean_author_chunk(n) for n in names]
        if cleaned and all(c and _AUTHOR_CHUNK_RE.match(c) for c in cleaned):
            for c in cleaned:
                surname = c.split()[-1]
                authors.append(squash(surname))
            consumed += 1
        else:
            break
    if consumed < len(chunks):
        title_chunk = chunks[consumed]

    title_tokens = tuple(squash(title_chunk).split())
    normalized = NormalizedReference(
        authors=tuple(a for a in authors if a),
        title_tokens=title_tokens,
        year=_extract_year(body),
    )
    return ReferenceRecord(
        raw=raw, normalized=normalized, match_key=_build_match_key(normalized, raw)
    )


def reference_from_json(raw: str, normalized: dict | None) -> ReferenceRecord:
    """Record from corpus JSON; a pre-supplied normalized form wins over
    re-deriving one from the raw string."""
    from .errors import MalformedInput

    if normalized is None:
        return normalize_reference(raw)
    if not isinstance(normalized, dict):
        raise MalformedInput("references.normalized", "expected object")
    authors = normalized.get("authors", [])
    title_tokens = normalized.get("title_tokens", [])
    year = normalized.get("year")
    if not isinstance(authors, list) or not all(isinstance(a, str) for a in authors):
        raise MalformedInput("references.normalized.authors", "expected list of strings")
    if not isinstance(title_tokens, list) or not all(isinstance(t, str) for t in title_tokens):
        raise MalformedInput("references.normalized.title_tokens", "expected list of strings")
    if year is not None and (isinstance(year, bool) or not isinstance(year, int)):
        raise MalformedInput("references.normalized.year", "expected integer or null")
    norm = NormalizedReference(
        authors=tuple(fold(a) for a in authors),
        title_tokens=tuple(fold(t) for t in title_tokens),
        year=year,
    )
    return ReferenceRecord(raw=raw, normalized=norm, match_key=_build_match_key(norm, raw))


def reference_to_json(record: ReferenceRecord) -> dict:
    return {
        "raw": record.raw,
        "normalized": {
            "authors": list(record.normalized.authors),
            "title_tokens": list(record.normalized.title_tokens),
            "year": record.normalized.year,
        },
    }


def _edit_distance(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        curr = [i]
        for j, cb in enumerate(b, start=1):
            cost = 0 if ca == cb else 1
            curr.append(min(prev[j] + 1, curr[j - 1] + 1, prev[j - 1] + cost))
        prev = curr
    return prev[-1]


def reference_distance(a: ReferenceRecord, b: ReferenceRecord) -> float:
    """Normalized edit distance over the space-joined comparison tokens.

    Character-level, because OCR noise corrupts characters inside tokens;
    token-level distance would count a one-letter confusion as a whole
    substitution and reject legitimate matches.
    """
    if a.match_key == b.match_key:
        return 0.0
    sa = " ".join(a.comparison_tokens())
    sb = " ".join(b.comparison_tokens())
    longest = max(len(sa), len(sb))
    if longest == 0:
        return 0.0
    return _edit_distance(sa, sb) / longest


def match_references(
    refs_a: list[ReferenceRecord] | tuple[ReferenceRecord, ...],
    refs_b: list[ReferenceRecord] | tuple[ReferenceRecord, ...],
    tol: float,
) -> list[tuple[int, int]]:
    """One-to-one reference matching, greedy by ascending distance.

    A pair qualifies when match keys are equal or the normalized distance
    is <= tol. The tie-break key is orientation-free, so the matching is
    symmetric: match(a, b) is the transpose of match(b, a).
    """
    if not 0.0 <= tol <= 1.0:
        raise ValueError(f"tol must be in [0, 1], got {tol}")
    candidates = []
    for i, ra in enumerate(refs_a):
        for j, rb in enumerate(refs_b):
            d = reference_distance(ra, rb)
            if d <= tol:
                candidates.append((d, min(i, j), max(i, j), i, j))
    candidates.sort()
    used_a: set[int] = set()
    used_b: set[int] = set()
    pairs = []
    for _, _, _, i, j in candidates:
        if i in used_a or j in used_b:
            continue
        used_a.add(i)
        used_b.add(j)
        pairs.append((i, j))
    pairs.sort()
    return pairs


def bibliographic_coupling(a: "Document", b: "Document", tol: float) -> float:
    """Matched reference pairs over the shorter reference list.

    min-normalization: a short paper drawing most of its references from a
    long one is exactly the suspicious pattern.
    """
    if not a.references or not b.references:
        return 0.0
    matched = match_references(list(a.references), list(b.references), tol)
    return len(matched) / min(len(a.references), len(b.references))


def citation_sequence_similarity(a: "Document", b: "Document", tol: float) -> float:
    """LCS over the two in-text citation streams, mapped through matched
    references; unmatched citations become side-unique sentinels."""
    if not a.citation_markers or not b.citation_markers:
        return 0.0
    matched = match_references(list(a.references), list(b.references), tol)
    shared_a = {ia: n for n, (ia, _) in enumerate(matched)}
    shared_b = {ib: n for n, (_, ib) in enumerate(matched)}
    stream_a = [
        shared_a.get(m.reference_ordinal, ("a", m.reference_ordinal))
        for m in a.citation_markers
    ]
    stream_b = [
        shared_b.get(m.reference_ordinal, ("b", m.reference_ordinal))
        for m in b.citation_markers
    ]
    return lcs_ratio(stream_a, stream_b)
