"""Fingerprinting: rolling n-gram hashes, window selection, and the
set-overlap scores against a brute-force n-gram oracle."""

import random

import pytest

from conftest import make_doc
from mathdup.config import TextConfig
from mathdup.textsim import (
    Token,
    TokenStream,
    fingerprint_winnow,
    fingerprint_winnow_seeded,
    full_ngram_set,
    ngram_hashes,
    text_similarity,
    tokenize,
    winnow_values,
)

hypothesis = pytest.importorskip("hypothesis")
from hypothesis import given, settings
from hypothesis import strategies as st


def test_tokenize_spans_and_folding():
    stream = tokenize("The Rényi entropy, again")
    assert stream.normalized() == ["the", "renyi", "entropy", "again"]
    tok = stream.tokens[1]
    assert "The Rényi entropy, again"[tok.start : tok.end] == "Rényi"


def test_ngram_hashes_count():
    hashes = ngram_hashes(["a", "b", "c", "d", "e"], 3, seed=1)
    assert len(hashes) == 3


def test_ngram_hashes_short_stream_empty():
    assert ngram_hashes(["a", "b"], 3, seed=1) == []
    assert ngram_hashes([], 3, seed=1) == []


def test_rolling_hash_matches_direct():
    # the rolled value at offset i must equal hashing that 3-gram alone
    words = ["p", "q", "r", "s", "t", "u"]
    rolled = ngram_hashes(words, 3, seed=99)
    for i in range(len(rolled)):
        direct = ngram_hashes(words[i : i + 3], 3, seed=99)
        assert rolled[i] == direct[0]


def test_winnow_single_ngram_selected():
    stream = tokenize("alpha beta gamma")
    fps = fingerprint_winnow(stream, n=3, window=4)
    assert len(fps) == 1


def test_winnow_rightmost_tie():
    # equal hash values in one window: the rightmost position wins
    picked = winnow_values([7, 7, 7, 7], window=4)
    assert picked == [(3, 7)]


def test_winnow_empty():
    assert winnow_values([], window=4) == []


def _coverage_holds(hashes, window, picked):
    positions = {p for p, _ in picked}
    for start in range(0, max(0, len(hashes) - window) + 1):
        if len(hashes) >= window and not any(
            start <= p < start + window for p in positions
        ):
            return False
    return True


@given(
    hashes=st.lists(st.integers(min_value=0, max_value=2**20), max_size=60),
    window=st.integers(min_value=1, max_value=8),
)
@settings(max_examples=200)
def test_winnow_every_window_covered(hashes, window):
    picked = winnow_values(hashes, window)
    assert _coverage_holds(hashes, window, picked)
    # selected values really occur at their positions
    for pos, value in picked:
        assert hashes[pos] == value
    if hashes:
        assert picked


@given(st.lists(st.sampled_from("abcdefg"), min_size=0, max_size=40))
@settings(max_examples=100)
def test_fingerprints_subset_of_ngram_hashes(words):
    stream = TokenStream(
        tokens=tuple(Token(w, w, i * 2, i * 2 + 1) for i, w in enumerate(words))
    )
    fps = fingerprint_winnow(stream, n=3, window=4)
    all_hashes = ngram_hashes(words, 3, TextConfig().hash_seed)
    assert {f.hash for f in fps} <= set(all_hashes)


def test_seed_changes_hashes():
    words = ["x", "y", "z", "w"]
    assert ngram_hashes(words, 3, seed=1) != ngram_hashes(words, 3, seed=2)


def _overlap_docs(shared_words, extra_a, extra_b):
    body_a = " ".join(shared_words + extra_a)
    body_b = " ".join(shared_words + extra_b)
    return make_doc("da", body=body_a), make_doc("db", body=body_b)


def test_identical_bodies_full_overlap():
    a = make_doc("a", body="one two three four five six seven")
    b = make_doc("b", body="one two three four five six seven")
    sim = text_similarity(a, b, TextConfig())
    assert sim.jaccard == 1.0
    assert sim.containment_a_in_b == 1.0
    assert sim.containment_b_in_a == 1.0
    assert not sim.both_empty


def test_disjoint_bodies_zero():
    a = make_doc("a", body="alpha beta gamma delta epsilon zeta")
    b = make_doc("b", body="uno dos tres cuatro cinco seis")
    sim = text_similarity(a, b, TextConfig())
    assert sim.jaccard == 0.0
    assert sim.matched_spans == ()


def test_both_empty_flag():
    sim = text_similarity(make_doc("a"), make_doc("b"), TextConfig())
    assert sim.both_empty
    assert sim.jaccard == 0.0


def test_one_empty_not_flagged():
    sim = text_similarity(
        make_doc("a", body="some words in here for matching"), make_doc("b"), TextConfig()
    )
    assert not sim.both_empty
    assert sim.jaccard == 0.0


def test_matched_spans_point_at_copied_text():
    # span edges are fingerprint-granular, so they may start a few words
    # into the copied run, but both sides must show the same shared text
    shared = "the quick brown fox jumps over the lazy dog".split()
    a, b = _overlap_docs(shared, ["unique", "tail", "words", "here"], ["other", "ending", "parts", "now"])
    sim = text_similarity(a, b, TextConfig())
    assert sim.matched_spans
    span = sim.matched_spans[0]
    assert a.body_text[span.a_start : span.a_end] == b.body_text[span.b_start : span.b_end]
    assert "jumps" in a.body_text[span.a_start : span.a_end]


def test_symmetry():
    a = make_doc("a", body="shared phrase appears in both documents today")
    b = make_doc("b", body="another text where shared phrase appears too")
    cfg = TextConfig()
    ab = text_similarity(a, b, cfg)
    ba = text_similarity(b, a, cfg)
    assert ab.jaccard == ba.jaccard
    assert ab.containment_a_in_b == ba.containment_b_in_a


def _exact_jaccard(words_a, words_b, n):
    set_a = full_ngram_set(words_a, n)
    set_b = full_ngram_set(words_b, n)
    if not set_a and not set_b:
        return 0.0
    return len(set_a & set_b) / len(set_a | set_b)


def test_hashed_jaccard_tracks_exact_jaccard():
    """Hash-set overlap vs the literal n-gram-set overlap; only hash
    collisions could separate them."""
    rng = random.Random(4242)
    vocab = [f"w{i}" for i in range(50)]
    cfg = TextConfig()
    for _ in range(300):
        words_a = [rng.choice(vocab) for _ in range(rng.randint(0, 60))]
        words_b = [rng.choice(vocab) for _ in range(rng.randint(0, 60))]
        hashes_a = set(ngram_hashes(words_a, cfg.ngram, cfg.hash_seed))
        hashes_b = set(ngram_hashes(words_b, cfg.ngram, cfg.hash_seed))
        union = hashes_a | hashes_b
        hashed = len(hashes_a & hashes_b) / len(union) if union else 0.0
        exact = _exact_jaccard(words_a, words_b, cfg.ngram)
        assert abs(hashed - exact) < 1e-3


def test_fingerprint_determinism():
    stream = tokenize("determinism means identical runs give identical prints")
    first = fingerprint_winnow_seeded(stream, 3, 4, seed=123)
    second = fingerprint_winnow_seeded(stream, 3, 4, seed=123)
    assert first == second
