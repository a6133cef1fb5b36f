"""Case and diacritic folding plus word segmentation.

All channels (text, query, citation) share this normalization so that a
phrase typed in a query matches the same tokens the fingerprints were
built from.
"""

from __future__ import annotations

import re
import unicodedata

_WORD_RE = re.compile(r"\w+", re.UNICODE)
_NON_WORD_RE = re.compile(r"[^\w\s]", re.UNICODE)


def strip_diacritics(text: str) -> str:
    decomposed = unicodedata.normalize("NFKD", text)
    return "".join(ch for ch in decomposed if not unicodedata.combining(ch))


def fold(text: str) -> str:
    """Case-fold and diacritic-fold; the canonical comparison form.

    Iterated to a fixpoint: compatibility decomposition can surface new
    upper-case letters (math alphabets), and case-folding can surface new
    decomposable ones, so a single pass is not stable.
    """
    current = text
    for _ in range(4):
        folded = strip_diacritics(current.casefold())
        if folded == current:
            return folded
        current = folded
    return current


def word_spans(text: str) -> list[tuple[str, int, int]]:
    """Words with their (start, end) character spans in the original text.

    Words are maximal runs of word characters; everything else
    (whitespace and punctuation) separates them.
    """
    return [(m.group(), m.start(), m.end()) for m in _WORD_RE.finditer(text)]


def fold_words(text: str) -> list[str]:
    """Folded word tokens of ``text``, punctuation discarded."""
    return [fold(w) for w, _, _ in word_spans(text)]


def squash(text: str) -> str:
    """Fold and delete in-word punctuation, e.g. ``g1'aphs`` -> ``g1aphs``.

    Used for noisy reference strings where OCR scatters punctuation
    inside words; plain word splitting would break such words apart.
    """
    return _NON_WORD_RE.sub("", fold(text))
