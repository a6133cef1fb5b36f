"""Index build and serialization, candidate retrieval, pairwise reports,
flagging, corpus scans, and retrieval metrics."""

import json

import pytest

from conftest import corpus_of, make_doc
from mathdup.config import ChannelThreshold, EngineConfig, RetrievalConfig, Thresholds
from mathdup.detect import (
    CiteChannel,
    MathChannel,
    SimilarityReport,
    TextChannel,
    build_index,
    canonical_pair,
    channel_scalars,
    detailed_analysis,
    evaluate_retrieval,
    flag_suspicion,
    index_from_json,
    index_to_json,
    level_rank,
    load_index,
    report_from_dict,
    report_to_dict,
    retrieve_candidates,
    save_index,
    scan_corpus,
)
from mathdup.errors import (
    DuplicateDocId,
    EmptyIndex,
    InvariantViolation,
    MalformedInput,
    UnknownDocId,
)

hypothesis = pytest.importorskip("hypothesis")
from hypothesis import given, settings
from hypothesis import strategies as st

BODY = (
    "the quick brown fox jumps over the lazy dog while the spectral radius "
    "of the operator stays bounded above by one for every admissible choice"
)

REF = "A. Rényi, On connected graphs I, Publ. Math. 4 (1959), 385-388."
REF2 = "J. W. Moon and L. Moser, On cliques in graphs, Israel J. Math. 3 (1965), 23-28."


def _pair_corpus():
    original = make_doc(
        "orig",
        body=BODY,
        year=1990,
        formula_token_lists=[[("identifier", "x"), ("operator", "+"), ("identifier", "y")]],
        reference_raws=[REF, REF2],
        marker_ordinals=[0, 1],
    )
    copy = make_doc(
        "copy",
        body=BODY + " with a small appended remark",
        year=2000,
        formula_token_lists=[[("identifier", "x"), ("operator", "+"), ("identifier", "y")]],
        reference_raws=[REF, REF2],
        marker_ordinals=[0, 1],
    )
    other = make_doc(
        "other",
        body="completely different prose about projective planes and their collineation groups",
        year=1995,
    )
    return corpus_of(original, copy, other)


def test_level_rank_ordering():
    assert level_rank("none") < level_rank("warning") < level_rank("suspicious")
    with pytest.raises(InvariantViolation):
        level_rank("panic")


# ----------------------------------------------------------------- index


def test_index_json_round_trip_deterministic(tmp_path):
    corpus = _pair_corpus()
    index = build_index(corpus)
    blob = index_to_json(index)
    assert blob == index_to_json(index)
    rebuilt = index_from_json(blob)
    assert index_to_json(rebuilt) == blob

    path = tmp_path / "index.json"
    save_index(index, path)
    assert index_to_json(load_index(path)) == blob


def test_index_rejects_wrong_version():
    payload = json.loads(index_to_json(build_index(_pair_corpus())))
    payload["version"] = 99
    with pytest.raises(MalformedInput):
        index_from_json(json.dumps(payload))
    with pytest.raises(MalformedInput):
        index_from_json("{not json")


def test_index_duplicate_document():
    corpus = _pair_corpus()
    index = build_index(corpus)
    with pytest.raises(DuplicateDocId):
        index.add_document(corpus.get("orig"))


def test_load_index_missing_file(tmp_path):
    with pytest.raises(MalformedInput):
        load_index(tmp_path / "absent.json")


# ------------------------------------------------------------- retrieval


def test_retrieval_ranks_near_duplicate_first():
    index = build_index(_pair_corpus())
    candidates = retrieve_candidates(index, "orig")
    assert candidates[0].doc_id == "copy"
    assert candidates[0].prescore > candidates[1].prescore
    assert set(candidates[0].channel_scores) == {"text", "math", "cite"}
    # zero-overlap documents still get ranked
    assert [c.doc_id for c in candidates] == ["copy", "other"]


def test_retrieval_k_truncates():
    index = build_index(_pair_corpus())
    assert len(retrieve_candidates(index, "orig", k=1)) == 1
    assert len(retrieve_candidates(index, "orig", k=None)) == 2


def test_retrieval_errors():
    with pytest.raises(EmptyIndex):
        retrieve_candidates(build_index(corpus_of()), "x")
    index = build_index(_pair_corpus())
    with pytest.raises(UnknownDocId):
        retrieve_candidates(index, "ghost")
    with pytest.raises(InvariantViolation):
        retrieve_candidates(
            index,
            "orig",
            retrieval=RetrievalConfig(text_weight=0.0, math_weight=0.0, cite_weight=0.0),
        )


def test_retrieval_tie_break_on_id():
    corpus = corpus_of(
        make_doc("q", body="alpha beta gamma delta"),
        make_doc("z-doc", body="unrelated words here entirely"),
        make_doc("a-doc", body="other unrelated words instead"),
    )
    candidates = retrieve_candidates(build_index(corpus), "q")
    assert [c.doc_id for c in candidates] == ["a-doc", "z-doc"]


# ------------------------------------------------------ pairwise reports


def test_canonical_pair_orientation():
    older = make_doc("b", year=1990)
    newer = make_doc("a", year=2000)
    assert canonical_pair(newer, older) == (older, newer)
    assert canonical_pair(older, newer) == (older, newer)
    # same year: ascending id
    x, y = make_doc("x", year=2000), make_doc("y", year=2000)
    assert canonical_pair(y, x) == (x, y)


def test_detailed_analysis_orientation_invariant():
    corpus = _pair_corpus()
    a, b = corpus.get("orig"), corpus.get("copy")
    assert detailed_analysis(a, b) == detailed_analysis(b, a)
    report = detailed_analysis(a, b)
    assert report.first_id == "orig" and report.second_id == "copy"
    assert report.text.jaccard > 0.5
    assert report.math.category == "identical"
    assert report.cite.coupling == 1.0


def test_detailed_analysis_rejects_self_compare():
    doc = make_doc("solo")
    with pytest.raises(InvariantViolation):
        detailed_analysis(doc, doc)


def test_channels_unavailable_without_features():
    bare_a = make_doc("a", body=BODY, year=1990)
    bare_b = make_doc("b", body=BODY, year=2000)
    report = detailed_analysis(bare_a, bare_b)
    assert not report.math.available
    assert not report.cite.available
    scalars = channel_scalars(report)
    assert scalars["math"] is None and scalars["cite"] is None
    assert scalars["text"] == report.text.jaccard


def _report(text=0.0, math_hist=None, cite_pair=None):
    """Hand-built report with pinned channel scalars."""
    return SimilarityReport(
        first_id="f",
        second_id="s",
        first_year=1990,
        second_year=2000,
        text=TextChannel(
            available=True,
            jaccard=text,
            containment_first_in_second=text,
            containment_second_in_first=text,
            both_empty=False,
            matched_spans=(),
        ),
        math=MathChannel(
            available=math_hist is not None,
            histogram=math_hist or 0.0,
            sequence=0.0,
            category="unrelated",
            evidence=(),
        ),
        cite=CiteChannel(
            available=cite_pair is not None,
            coupling=cite_pair[0] if cite_pair else 0.0,
            sequence=cite_pair[1] if cite_pair else 0.0,
        ),
    )


def test_flagging_levels_and_combination():
    flags = flag_suspicion(_report(text=0.25, cite_pair=(0.3, 0.6)))
    assert flags.levels == {"text": "suspicious", "math": "none", "cite": "suspicious"}
    assert flags.combined == "suspicious"
    assert flags.flagged == ("cite", "text")


def test_flagging_bounds_are_strict():
    # a score exactly at a bound stays below it
    assert flag_suspicion(_report(text=0.12)).levels["text"] == "none"
    assert flag_suspicion(_report(text=0.20)).levels["text"] == "warning"
    assert flag_suspicion(_report(text=0.2000001)).levels["text"] == "suspicious"


def test_flagging_unavailable_channels_stay_none():
    flags = flag_suspicion(_report(text=0.0))
    assert flags.levels == {"text": "none", "math": "none", "cite": "none"}
    assert flags.combined == "none"
    assert flags.flagged == ()


def test_flagging_cite_scalar_is_worse_of_two():
    low_coupling = flag_suspicion(_report(cite_pair=(0.1, 0.55)))
    assert low_coupling.levels["cite"] == "suspicious"
    low_sequence = flag_suspicion(_report(cite_pair=(0.55, 0.1)))
    assert low_sequence.levels["cite"] == "suspicious"


def test_flagging_respects_custom_thresholds():
    lax = Thresholds(
        text=ChannelThreshold(warning=0.5, suspicious=0.9),
        math=Thresholds().math,
        cite=Thresholds().cite,
    )
    assert flag_suspicion(_report(text=0.25), lax).levels["text"] == "none"


def test_report_round_trip_and_flag_independence():
    corpus = _pair_corpus()
    report = detailed_analysis(corpus.get("orig"), corpus.get("copy"))
    flags = flag_suspicion(report)

    bare = report_to_dict(report)
    assert "flags" not in bare
    assert report_from_dict(bare) == report

    flagged = report_to_dict(report, flags)
    assert flagged["flags"]["combined"] == flags.combined
    # the channels section must not depend on flagging
    assert json.dumps(bare["channels"], sort_keys=True) == json.dumps(
        flagged["channels"], sort_keys=True
    )
    json.dumps(flagged)


def test_report_from_dict_rejects_malformed():
    with pytest.raises(MalformedInput):
        report_from_dict({"pair": {}})


# ------------------------------------------------------------------ scan


def test_scan_corpus_finds_planted_pair():
    corpus = _pair_corpus()
    results = scan_corpus(corpus, min_level="warning")
    pairs = [(r.first_id, r.second_id) for r, _ in results]
    assert ("orig", "copy") in pairs
    assert len(pairs) == len(set(pairs))
    for _, flags in results:
        assert level_rank(flags.combined) >= level_rank("warning")


def test_scan_corpus_min_level_filters():
    corpus = _pair_corpus()
    warnings = scan_corpus(corpus, min_level="warning")
    suspicious = scan_corpus(corpus, min_level="suspicious")
    assert len(suspicious) <= len(warnings)
    everything = scan_corpus(corpus, min_level="none")
    assert len(everything) >= len(warnings)


# ------------------------------------------------------------ evaluation


def test_evaluate_retrieval_perfect_pair():
    index = build_index(_pair_corpus())
    result = evaluate_retrieval(index, [("orig", "copy")], k=1)
    assert result.mrr == 1.0
    assert result.recall_at_k == 1.0
    assert result.ranks == {"orig": 1}


def test_evaluate_retrieval_errors():
    index = build_index(_pair_corpus())
    with pytest.raises(InvariantViolation):
        evaluate_retrieval(index, [])
    with pytest.raises(UnknownDocId):
        evaluate_retrieval(index, [("orig", "ghost")])


# ------------------------------------------------------------ properties

_WORDS = st.lists(
    st.sampled_from("alpha beta gamma delta epsilon zeta eta theta".split()),
    min_size=0,
    max_size=30,
).map(" ".join)


@settings(max_examples=100, deadline=None)
@given(_WORDS, _WORDS, st.integers(1900, 2020), st.integers(1900, 2020))
def test_analysis_orientation_invariance_property(body_a, body_b, year_a, year_b):
    a = make_doc("pa", body=body_a, year=year_a)
    b = make_doc("pb", body=body_b, year=year_b)
    forward = detailed_analysis(a, b)
    backward = detailed_analysis(b, a)
    assert forward == backward
    assert (forward.first_year, forward.first_id) <= (
        forward.second_year,
        forward.second_id,
    )


@settings(max_examples=100, deadline=None)
@given(_WORDS, _WORDS)
def test_flags_none_levels_match_report(body_a, body_b):
    a = make_doc("pa", body=body_a, year=1990)
    b = make_doc("pb", body=body_b, year=2000)
    report = detailed_analysis(a, b)
    flags = flag_suspicion(report)
    assert set(flags.levels) == {"text", "math", "cite"}
    assert flags.combined == max(flags.levels.values(), key=level_rank)
