"""Verdict log: creation rules, token derivation, JSONL replay with
duplicate collapse, and latest-wins pair lookup."""

import json

import pytest

from mathdup.errors import MalformedInput, StorageUnavailable
from mathdup.verdicts import (
    VERDICT_DECISIONS,
    Verdict,
    VerdictStore,
    verdict_token,
)


def _verdict(ts="2024-05-01T10:00:00.000000Z", reviewer="rev1", decision="plagiarism"):
    return Verdict.create("a1", "b2", reviewer, decision, note="checked", timestamp=ts)


def test_decisions_cover_case_labels_plus_all_clear():
    assert "no_reuse" in VERDICT_DECISIONS
    assert "plagiarism" in VERDICT_DECISIONS
    assert "legitimate_reuse" in VERDICT_DECISIONS
    assert len(VERDICT_DECISIONS) == 10


def test_create_validates_inputs():
    with pytest.raises(MalformedInput):
        Verdict.create("a", "b", "rev", "made_up_decision")
    with pytest.raises(MalformedInput):
        Verdict.create("a", "b", "   ", "no_reuse")


def test_create_fills_timestamp_and_token():
    verdict = Verdict.create("a", "b", "rev", "no_reuse")
    assert verdict.timestamp.endswith("Z")
    assert verdict.token == verdict_token("a", "b", verdict.timestamp, "rev")
    assert len(verdict.token) == 16


def test_token_depends_on_every_identity_field():
    base = verdict_token("a", "b", "t", "r")
    assert verdict_token("x", "b", "t", "r") != base
    assert verdict_token("a", "x", "t", "r") != base
    assert verdict_token("a", "b", "x", "r") != base
    assert verdict_token("a", "b", "t", "x") != base
    # stable across calls
    assert verdict_token("a", "b", "t", "r") == base


def test_verdict_dict_round_trip():
    verdict = _verdict()
    assert Verdict.from_dict(verdict.to_dict()) == verdict
    with pytest.raises(MalformedInput):
        Verdict.from_dict({"first": "a"})


def test_store_append_and_replay(tmp_path):
    store = VerdictStore(tmp_path / "log.jsonl")
    assert store.all_verdicts() == []
    v1 = store.append(_verdict())
    v2 = store.append(_verdict(ts="2024-05-02T10:00:00.000000Z", decision="no_reuse"))
    assert store.all_verdicts() == [v1, v2]


def test_store_collapses_replayed_duplicates(tmp_path):
    store = VerdictStore(tmp_path / "log.jsonl")
    verdict = _verdict()
    store.append(verdict)
    store.append(verdict)
    assert store.all_verdicts() == [verdict]
    # a later decision by the same reviewer at a new time is distinct
    store.append(_verdict(ts="2024-05-03T10:00:00.000000Z"))
    assert len(store.all_verdicts()) == 2


def test_active_for_latest_wins(tmp_path):
    store = VerdictStore(tmp_path / "log.jsonl")
    assert store.active_for("a1", "b2") is None
    store.append(_verdict())
    newer = store.append(
        _verdict(ts="2024-06-01T10:00:00.000000Z", reviewer="rev2", decision="no_reuse")
    )
    assert store.active_for("a1", "b2") == newer
    assert store.active_for("b2", "a1") is None  # pairs are directional keys


def test_store_rejects_corrupt_line(tmp_path):
    path = tmp_path / "log.jsonl"
    store = VerdictStore(path)
    store.append(_verdict())
    with path.open("a", encoding="utf-8") as fh:
        fh.write("{broken\n")
    with pytest.raises(MalformedInput) as err:
        store.all_verdicts()
    assert "log.jsonl:2" in str(err.value)


def test_store_skips_blank_lines(tmp_path):
    path = tmp_path / "log.jsonl"
    store = VerdictStore(path)
    verdict = _verdict()
    path.write_text(
        json.dumps(verdict.to_dict(), sort_keys=True) + "\n\n   \n", encoding="utf-8"
    )
    assert store.all_verdicts() == [verdict]


def test_store_unavailable_path(tmp_path):
    store = VerdictStore(tmp_path / "no" / "such" / "dir" / "log.jsonl")
    with pytest.raises(StorageUnavailable):
        store.append(_verdict())
