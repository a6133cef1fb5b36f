"""Deterministic synthetic corpora with planted reuse pairs.

Everything here is seeded: the same seed always yields the same corpus,
the same planted pairs, and the same taxonomy cases. Used by the
evaluation scripts and the end-to-end retrieval checks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .citesim import normalize_reference
from .corpus import Corpus, Document, Formula, CitationMarker, MathToken
from .errors import InvariantViolation
from .folding import word_spans
from .mathsim import (
    FormulaNode,
    apply_node,
    canonicalize_formula,
    identifier_node,
    number_node,
    serialize_tree,
    tree_to_tokens,
)

_SYLLABLES = [
    "ba", "be", "bi", "bo", "bu", "da", "de", "di", "do", "du",
    "fa", "fe", "fi", "fo", "fu", "ga", "ge", "gi", "go", "gu",
    "ka", "ke", "ki", "ko", "ku", "la", "le", "li", "lo", "lu",
    "ma", "me", "mi", "mo", "mu", "na", "ne", "ni", "no", "nu",
    "pa", "pe", "pi", "po", "pu", "ra", "re", "ri", "ro", "ru",
    "sa", "se", "si", "so", "su", "ta", "te", "ti", "to", "tu",
    "va", "ve", "vi", "vo", "vu", "za", "ze", "zi", "zo", "zu",
]

_SURNAMES = [
    "Adler", "Bergmann", "Caruso", "Dvorak", "Eriksen", "Fontaine",
    "Grigoriev", "Haldane", "Ibarra", "Jansson", "Kovacs", "Lindqvist",
    "Moravec", "Novak", "Okafor", "Petrov", "Quintana", "Rossi",
    "Sandoval", "Takeda", "Ulrich", "Vasquez", "Wagner", "Xylander",
    "Yamada", "Zelenka", "Almeida", "Brandt", "Castellano", "Dietrich",
    "Engstrom", "Ferreira", "Gallo", "Hoffmann", "Ivanova", "Jelinek",
    "Kaminski", "Larsen", "Moreau", "Nielsen",
]

IDENT_POOL = (
    [chr(c) for c in range(ord("a"), ord("z") + 1)]
    + ["alpha", "beta", "gamma", "delta", "epsilon", "theta", "lambda",
       "mu", "nu", "xi", "rho", "sigma", "tau", "phi", "chi", "psi", "omega"]
    + [f"{letter}{digit}" for letter in "abcdefghijklmnopqrstuvwxyz" for digit in "123"]
)

_TREE_OPS = ["+", "+", "·", "·", "=", "/", "^", "-"]


def make_vocab(rng: random.Random, size: int = 700) -> list[str]:
    words: set[str] = set()
    while len(words) < size:
        word = "".join(rng.choice(_SYLLABLES) for _ in range(rng.randint(2, 4)))
        words.add(word)
    return sorted(words)


def _sentence(rng: random.Random, vocab: list[str], lo: int = 6, hi: int = 12) -> str:
    words = [rng.choice(vocab) for _ in range(rng.randint(lo, hi))]
    return " ".join(words).capitalize() + "."


def random_formula_tree(
    rng: random.Random, idents: list[str] | None = None, depth: int = 3
) -> FormulaNode:
    idents = idents or IDENT_POOL

    def leaf() -> FormulaNode:
        if rng.random() < 0.2:
            return number_node(str(rng.randint(1, 9)))
        return identifier_node(rng.choice(idents))

    def build(d: int) -> FormulaNode:
        if d <= 0 or rng.random() < 0.3:
            return leaf()
        op = rng.choice(_TREE_OPS)
        return apply_node(op, build(d - 1), build(d - 1))

    node = build(depth)
    if node.kind != "apply":
        node = apply_node(rng.choice(_TREE_OPS), node, leaf())
    return node


def formula_from_tokens(tokens: list[MathToken], position: int) -> Formula:
    raw = " ".join(t.value for t in tokens)
    return Formula(raw=raw, tokens=tuple(tokens), position=position)


def random_reference_raw(rng: random.Random, vocab: list[str]) -> str:
    surname = rng.choice(_SURNAMES)
    initial = chr(rng.randint(ord("A"), ord("Z")))
    title = " ".join(rng.choice(vocab) for _ in range(rng.randint(3, 6)))
    journal = rng.choice(vocab).capitalize() + " J."
    volume = rng.randint(1, 250)
    year = rng.randint(1950, 2015)
    p1 = rng.randint(1, 400)
    return f"{initial}. {surname}, {title}, {journal} {volume} ({year}), {p1}-{p1 + rng.randint(3, 40)}."


def corrupt_reference_raw(rng: random.Random, raw: str, heavy: bool = False) -> str:
    """OCR-style noise. Light corruption touches only the journal segment,
    which a reference's match key never includes; heavy also swaps one
    vowel inside a long title word so the key itself changes."""
    segments = raw.split(", ")
    swaps = {"o": "0", "l": "1", "e": "c", "a": "u", "i": "l"}
    # author, title, journal, pages; corrupt from the journal on
    start = 2 if len(segments) >= 3 else len(segments) - 1
    for s in range(start, len(segments)):
        chars = list(segments[s])
        for idx, ch in enumerate(chars):
            if ch in swaps and rng.random() < 0.3:
                chars[idx] = swaps[ch]
        segments[s] = "".join(chars)
    out = ", ".join(segments)
    if heavy:
        parts = out.split(", ")
        if len(parts) >= 2:
            title_words = parts[1].split(" ")
            longs = [i for i, w in enumerate(title_words) if len(w) >= 5]
            if longs:
                i = rng.choice(longs)
                word = title_words[i]
                vowels = [j for j, ch in enumerate(word) if ch in "aeiou"]
                if vowels:
                    j = rng.choice(vowels)
                    word = word[:j] + rng.choice([v for v in "aeiou" if v != word[j]]) + word[j + 1 :]
                    title_words[i] = word
                    parts[1] = " ".join(title_words)
                    out = ", ".join(parts)
    return out


@dataclass
class _DocDraft:
    doc_id: str
    year: int
    journal: str
    authors: list[str]
    sentences: list[str]
    formula_tokens: list[list[MathToken]]
    reference_raws: list[str]
    marker_ordinals: list[int]


@dataclass(frozen=True)
class PlantedPair:
    query_id: str  # the later document
    expected_id: str  # the earlier one it reuses
    kind: str  # verbatim | formula | citation | partial


def _draft_doc(rng: random.Random, doc_id: str, vocab: list[str], journals: list[str]) -> _DocDraft:
    ident_subset = rng.sample(IDENT_POOL, rng.randint(4, 7))
    formula_tokens = [
        tree_to_tokens(random_formula_tree(rng, ident_subset, depth=rng.randint(2, 3)))
        for _ in range(rng.randint(1, 4))
    ]
    n_refs = rng.randint(5, 10)
    refs = [random_reference_raw(rng, vocab) for _ in range(n_refs)]
    ordinals = list(range(n_refs))
    rng.shuffle(ordinals)
    # a few repeat citations
    for _ in range(rng.randint(0, 3)):
        ordinals.append(rng.randrange(n_refs))
    return _DocDraft(
        doc_id=doc_id,
        year=rng.randint(1960, 2015),
        journal=rng.choice(journals),
        authors=[f"{chr(rng.randint(65, 90))}. {rng.choice(_SURNAMES)}" for _ in range(rng.randint(1, 3))],
        sentences=[_sentence(rng, vocab) for _ in range(rng.randint(25, 40))],
        formula_tokens=formula_tokens,
        reference_raws=refs,
        marker_ordinals=ordinals,
    )


def _render_doc(rng: random.Random, draft: _DocDraft) -> Document:
    body = " ".join(draft.sentences)
    word_count = len(word_spans(body))
    n_formulae = len(draft.formula_tokens)
    positions = sorted(rng.sample(range(word_count + 1), min(n_formulae, word_count + 1)))
    while len(positions) < n_formulae:
        positions.append(positions[-1] if positions else 0)
    formulae = tuple(
        formula_from_tokens(toks, pos)
        for toks, pos in zip(draft.formula_tokens, positions)
    )
    n_markers = len(draft.marker_ordinals)
    marker_positions = sorted(
        rng.sample(range(word_count + 1), min(n_markers, word_count + 1))
    )
    while len(marker_positions) < n_markers:
        marker_positions.append(marker_positions[-1] if marker_positions else 0)
    markers = tuple(
        CitationMarker(position=pos, reference_ordinal=ref)
        for pos, ref in zip(marker_positions, draft.marker_ordinals)
    )
    return Document(
        id=draft.doc_id,
        title=_sentence(rng, draft.sentences[0].lower().rstrip(".").split(), 3, 3)
        if draft.sentences
        else "Untitled",
        authors=tuple(draft.authors),
        journal=draft.journal,
        publication_year=draft.year,
        language="en",
        abstract_text=" ".join(draft.sentences[:2]),
        body_text=body,
        formulae=formulae,
        references=tuple(normalize_reference(r) for r in draft.reference_raws),
        citation_markers=markers,
    )


def make_benchmark(
    seed: int = 20240501, size: int = 500
) -> tuple[Corpus, list[PlantedPair]]:
    """Synthetic corpus with ten planted reuse pairs of four kinds:
    verbatim text copies, formula-level reuse with unrelated text,
    citation-pattern copies with noisy references, and partial overlap
    on both text and references."""
    kinds = ["verbatim"] * 3 + ["formula"] * 3 + ["citation"] * 2 + ["partial"] * 2
    if size < 2 * len(kinds):
        raise InvariantViolation("size", f"need at least {2 * len(kinds)} documents")
    rng = random.Random(seed)
    vocab = make_vocab(rng, 700)
    journals = [
        " ".join(w.capitalize() for w in rng.sample(vocab, 2)) + " Journal"
        for _ in range(60)
    ]
    drafts = [
        _draft_doc(rng, f"doc-{i:04d}", vocab, journals) for i in range(size)
    ]

    planted: list[PlantedPair] = []
    # planted pairs occupy the front of the corpus, two drafts per pair
    for p, kind in enumerate(kinds):
        earlier = drafts[2 * p]
        later = drafts[2 * p + 1]
        earlier.year = rng.randint(1965, 1995)
        later.year = earlier.year + rng.randint(2, 8)

        if kind == "verbatim":
            # wholesale copying drags formulae and references along with
            # the prose
            copied = [s for s in earlier.sentences if rng.random() < 0.55]
            fresh = [_sentence(rng, vocab) for _ in range(len(later.sentences) - len(copied))]
            merged = []
            ci = fi = 0
            for slot in range(len(copied) + len(fresh)):
                take_copied = ci < len(copied) and (fi >= len(fresh) or rng.random() < 0.5)
                if take_copied:
                    merged.append(copied[ci])
                    ci += 1
                else:
                    merged.append(fresh[fi])
                    fi += 1
            later.sentences = merged
            later.formula_tokens = [
                list(t) for t in earlier.formula_tokens if rng.random() < 0.6
            ] or [list(earlier.formula_tokens[0])]
            n_refs = max(2, int(0.4 * len(earlier.reference_raws)))
            later.reference_raws = earlier.reference_raws[:n_refs] + later.reference_raws[n_refs:]
        elif kind == "formula":
            ident_subset = rng.sample(IDENT_POOL, 6)
            shared = [
                tree_to_tokens(random_formula_tree(rng, ident_subset, depth=3))
                for _ in range(8)
            ]
            earlier.formula_tokens = [list(t) for t in shared]
            later.formula_tokens = [list(t) for t in shared]
        elif kind == "citation":
            later.reference_raws = [
                corrupt_reference_raw(rng, r, heavy=(i == 0))
                for i, r in enumerate(earlier.reference_raws)
            ]
            later.marker_ordinals = list(earlier.marker_ordinals)
        elif kind == "partial":
            copied = [s for s in earlier.sentences if rng.random() < 0.3]
            later.sentences = copied + [
                _sentence(rng, vocab) for _ in range(len(later.sentences) - len(copied))
            ]
            rng.shuffle(later.sentences)
            n_shared = max(2, int(0.4 * len(earlier.reference_raws)))
            shared_refs = earlier.reference_raws[:n_shared]
            later.reference_raws = shared_refs + later.reference_raws[n_shared:]
        planted.append(PlantedPair(query_id=later.doc_id, expected_id=earlier.doc_id, kind=kind))

    corpus = Corpus()
    for draft in drafts:
        corpus.documents[draft.doc_id] = _render_doc(rng, draft)
    return corpus, planted


@dataclass(frozen=True)
class TaxonomyCase:
    doc_a: Document
    doc_b: Document
    expected: str


def _tax_doc(doc_id: str, year: int, token_lists: list[list[MathToken]]) -> Document:
    body = "formula study " * 8
    formulae = tuple(
        formula_from_tokens(toks, min(2 * i, 15)) for i, toks in enumerate(token_lists)
    )
    return Document(
        id=doc_id,
        title="Generated comparison fixture",
        authors=("T. Fixture",),
        publication_year=year,
        language="en",
        abstract_text="",
        body_text=body.strip(),
        formulae=formulae,
    )


def _distinct_trees(rng: random.Random, count: int, idents: list[str]) -> list[FormulaNode]:
    # distinct under canonicalization, so no two are secretly the same
    # formula with shuffled operands
    trees: list[FormulaNode] = []
    seen: set[str] = set()
    while len(trees) < count:
        t = random_formula_tree(rng, idents, depth=2)
        key = serialize_tree(canonicalize_formula(t))
        if key not in seen:
            seen.add(key)
            trees.append(t)
    return trees


def _commutative_pair(rng: random.Random, idents: list[str]) -> tuple[FormulaNode, FormulaNode]:
    """A tree and a commutative-permutation variant with a different
    child order (so the plain trees differ but canonical forms agree)."""
    while True:
        left = random_formula_tree(rng, idents, depth=2)
        right = random_formula_tree(rng, idents, depth=2)
        if serialize_tree(left) == serialize_tree(right):
            continue
        op = rng.choice(["+", "·", "="])
        return apply_node(op, left, right), apply_node(op, right, left)


def make_taxonomy_cases(seed: int = 7, count: int = 200) -> list[TaxonomyCase]:
    """Labeled document pairs cycling through the machine-assignable reuse
    categories plus unrelated pairs."""
    rng = random.Random(seed)
    categories = [
        "identical",
        "equivalent",
        "order_changes",
        "different_presentation",
        "splits_or_merges",
        "unrelated",
    ]
    cases: list[TaxonomyCase] = []
    for i in range(count):
        expected = categories[i % len(categories)]
        idents = rng.sample(IDENT_POOL, 6)
        a_id, b_id = f"tax-{i:03d}-a", f"tax-{i:03d}-b"

        if expected == "identical":
            toks = [tree_to_tokens(t) for t in _distinct_trees(rng, rng.randint(1, 3), idents)]
            case = TaxonomyCase(_tax_doc(a_id, 2000, toks), _tax_doc(b_id, 2005, [list(t) for t in toks]), expected)
        elif expected == "equivalent":
            base, permuted = _commutative_pair(rng, idents)
            case = TaxonomyCase(
                _tax_doc(a_id, 2000, [tree_to_tokens(base)]),
                _tax_doc(b_id, 2005, [tree_to_tokens(permuted)]),
                expected,
            )
        elif expected == "order_changes":
            trees = _distinct_trees(rng, 3, idents)
            toks = [tree_to_tokens(t) for t in trees]
            reordered = [toks[2], toks[0], toks[1]]
            case = TaxonomyCase(_tax_doc(a_id, 2000, toks), _tax_doc(b_id, 2005, reordered), expected)
        elif expected == "different_presentation":
            t = random_formula_tree(rng, idents, depth=2)
            toks = tree_to_tokens(t)
            wrapped = (
                [MathToken("structural", "(")] + list(toks) + [MathToken("structural", ")")]
            )
            # swap in a synonym operator spelling where one exists
            restyled = [
                MathToken("operator", "*") if tok == MathToken("operator", "·") else tok
                for tok in wrapped
            ]
            case = TaxonomyCase(_tax_doc(a_id, 2000, [toks]), _tax_doc(b_id, 2005, [restyled]), expected)
        elif expected == "splits_or_merges":
            parts = _distinct_trees(rng, 2, idents)
            whole = apply_node("+", *parts)
            toks = tree_to_tokens(whole)
            # cut inside the token list; the pieces need not parse
            cut = rng.randint(1, len(toks) - 1)
            case = TaxonomyCase(
                _tax_doc(a_id, 2000, [toks]),
                _tax_doc(b_id, 2005, [toks[:cut], toks[cut:]]),
                expected,
            )
        else:  # unrelated
            left_idents = idents[:3]
            right_idents = rng.sample([x for x in IDENT_POOL if x not in left_idents], 3)
            while True:
                left = random_formula_tree(rng, left_idents, 2)
                right = random_formula_tree(rng, right_idents, 2)
                if serialize_tree(canonicalize_formula(left)) != serialize_tree(
                    canonicalize_formula(right)
                ):
                    break
            case = TaxonomyCase(
                _tax_doc(a_id, 2000, [tree_to_tokens(left)]),
                _tax_doc(b_id, 2005, [tree_to_tokens(right)]),
                expected,
            )
        cases.append(case)
    return cases
