"""Text channel: tokenization, winnowed n-gram fingerprints, pair scores.

Fingerprints are 64-bit rolling hashes of word n-grams; winnowing keeps the
minimum hash of every sliding window, which guarantees that any sufficiently
long verbatim overlap leaves at least one shared fingerprint while storing
only a fraction of all n-grams.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from difflib import SequenceMatcher
from typing import TYPE_CHECKING, Iterable, Sequence

from .config import TextConfig
from .folding import fold, word_spans

if TYPE_CHECKING:
    from .corpus import Document

_MASK64 = (1 << 64) - 1
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
# The rolling base must be algebraically unrelated to the byte-level FNV
# multiplier: near-identical words differ by small multiples of the FNV
# prime, and a base equal to that prime lets such differences cancel
# across n-gram positions.
_POLY_BASE = 0x9E3779B97F4A7C15


@dataclass(frozen=True)
class Token:
    surface: str
    normalized: str
    start: int
    end: int


@dataclass(frozen=True)
class TokenStream:
    tokens: tuple[Token, ...]

    def __len__(self) -> int:
        return len(self.tokens)

    def normalized(self) -> list[str]:
        return [t.normalized for t in self.tokens]


@dataclass(frozen=True)
class Fingerprint:
    hash: int
    ngram_start: int  # token index of the n-gram's first word
    n: int


def tokenize(text: str) -> TokenStream:
    """Split on Unicode whitespace/punctuation; keep char spans into the
    original text for span highlighting."""
    return TokenStream(
        tokens=tuple(
            Token(surface=w, normalized=fold(w), start=s, end=e)
            for w, s, e in word_spans(text)
        )
    )


def _token_hash(normalized: str, seed: int) -> int:
    h = (_FNV_OFFSET ^ (seed & _MASK64)) & _MASK64
    for byte in normalized.encode("utf-8"):
        h = ((h ^ byte) * _FNV_PRIME) & _MASK64
    # splitmix-style finalizer; without it, hashes of words sharing a
    # prefix stay linearly related
    h = ((h ^ (h >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    h = ((h ^ (h >> 27)) * 0x94D049BB133111EB) & _MASK64
    return h ^ (h >> 31)


def ngram_hashes(normalized_tokens: Sequence[str], n: int, seed: int) -> list[int]:
    """Rolling polynomial hash of every word n-gram, mod 2^64."""
    if n < 1:
        raise ValueError("n must be >= 1")
    count = len(normalized_tokens) - n + 1
    if count <= 0:
        return []
    base = _POLY_BASE
    token_hashes = [_token_hash(t, seed) for t in normalized_tokens]
    top = pow(base, n - 1, 1 << 64)
    h = 0
    for t in token_hashes[:n]:
        h = (h * base + t) & _MASK64
    out = [h]
    for i in range(1, count):
        h = ((h - token_hashes[i - 1] * top) * base + token_hashes[i + n - 1]) & _MASK64
        out.append(h)
    return out


def winnow_values(hashes: Sequence[int], window: int) -> list[tuple[int, int]]:
    """Select (position, hash) of the minimum in every sliding window of
    ``window`` consecutive hashes, rightmost minimum on ties."""
    if window < 1:
        raise ValueError("window must be >= 1")
    if not hashes:
        return []
    selected: set[tuple[int, int]] = set()
    # Monotonic deque of candidate indices; popping on >= makes the newest
    # of equal minima win, which is the rightmost-tie rule.
    dq: deque[int] = deque()
    for i, h in enumerate(hashes):
        while dq and hashes[dq[-1]] >= h:
            dq.pop()
        dq.append(i)
        if dq[0] <= i - window:
            dq.popleft()
        if i >= window - 1 or i == len(hashes) - 1:
            j = dq[0]
            selected.add((j, hashes[j]))
    return sorted(selected)


def fingerprint_winnow(stream: TokenStream, n: int, window: int) -> list[Fingerprint]:
    """Winnowed fingerprints of a token stream, sorted by n-gram start and
    deduplicated by (hash, start). Streams shorter than n yield nothing."""
    return fingerprint_winnow_seeded(stream, n, window, TextConfig().hash_seed)


def fingerprint_winnow_seeded(
    stream: TokenStream, n: int, window: int, seed: int
) -> list[Fingerprint]:
    hashes = ngram_hashes(stream.normalized(), n, seed)
    return [Fingerprint(hash=h, ngram_start=pos, n=n) for pos, h in winnow_values(hashes, window)]


def document_fingerprints(doc: "Document", cfg: TextConfig) -> list[Fingerprint]:
    return fingerprint_winnow_seeded(tokenize(doc.body_text), cfg.ngram, cfg.window, cfg.hash_seed)


@dataclass(frozen=True)
class SpanPair:
    a_start: int
    a_end: int
    b_start: int
    b_end: int


@dataclass(frozen=True)
class TextSimilarity:
    jaccard: float
    containment_a_in_b: float
    containment_b_in_a: float
    matched_spans: tuple[SpanPair, ...]
    both_empty: bool  # score undefined; reported as 0 with this flag set


def _ngram_char_span(stream: TokenStream, start: int, n: int) -> tuple[int, int]:
    return stream.tokens[start].start, stream.tokens[start + n - 1].end


def text_similarity(a: "Document", b: "Document", cfg: TextConfig) -> TextSimilarity:
    """Jaccard and containment over winnowed fingerprint hash sets, plus
    aligned char spans of maximal runs of shared n-grams."""
    stream_a = tokenize(a.body_text)
    stream_b = tokenize(b.body_text)
    fp_a = fingerprint_winnow_seeded(stream_a, cfg.ngram, cfg.window, cfg.hash_seed)
    fp_b = fingerprint_winnow_seeded(stream_b, cfg.ngram, cfg.window, cfg.hash_seed)
    set_a = {f.hash for f in fp_a}
    set_b = {f.hash for f in fp_b}
    if not set_a and not set_b:
        return TextSimilarity(0.0, 0.0, 0.0, (), both_empty=True)
    shared = len(set_a & set_b)
    union = len(set_a | set_b)
    jaccard = shared / union if union else 0.0
    cont_a = shared / len(set_a) if set_a else 0.0
    cont_b = shared / len(set_b) if set_b else 0.0
    spans = _matched_spans(stream_a, fp_a, stream_b, fp_b, cfg.ngram)
    return TextSimilarity(jaccard, cont_a, cont_b, tuple(spans), both_empty=False)


def _matched_spans(
    stream_a: TokenStream,
    fp_a: list[Fingerprint],
    stream_b: TokenStream,
    fp_b: list[Fingerprint],
    n: int,
) -> list[SpanPair]:
    if not fp_a or not fp_b:
        return []
    seq_a = [f.hash for f in fp_a]
    seq_b = [f.hash for f in fp_b]
    matcher = SequenceMatcher(None, seq_a, seq_b, autojunk=False)
    spans = []
    for block in matcher.get_matching_blocks():
        if block.size == 0:
            continue
        first_a, last_a = fp_a[block.a], fp_a[block.a + block.size - 1]
        first_b, last_b = fp_b[block.b], fp_b[block.b + block.size - 1]
        a_start, _ = _ngram_char_span(stream_a, first_a.ngram_start, n)
        _, a_end = _ngram_char_span(stream_a, last_a.ngram_start, n)
        b_start, _ = _ngram_char_span(stream_b, first_b.ngram_start, n)
        _, b_end = _ngram_char_span(stream_b, last_b.ngram_start, n)
        spans.append(SpanPair(a_start, a_end, b_start, b_end))
    return spans


def full_ngram_set(tokens: Iterable[str], n: int) -> set[tuple[str, ...]]:
    """Unhashed full n-gram set; the brute-force oracle for Jaccard checks."""
    toks = list(tokens)
    return {tuple(toks[i : i + n]) for i in range(len(toks) - n + 1)}
