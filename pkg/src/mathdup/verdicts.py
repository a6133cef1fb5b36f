"""Append-only reviewer verdict log.

One JSON object per line; the file is the single source of truth and is
re-read on every query so multiple processes can share it. A verdict
carries a token derived from its identity fields; superseding an active
verdict requires presenting that token, which serializes concurrent
reviewers (see the service layer for the 409 path).
"""

from __future__ import annotations

import hashlib
import json
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .corpus import CASE_LABELS
from .errors import MalformedInput, StorageUnavailable

# Case labels plus the explicit all-clear decision.
VERDICT_DECISIONS = frozenset(CASE_LABELS) | {"no_reuse"}


def _now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%S.%fZ")


def verdict_token(first_id: str, second_id: str, timestamp: str, reviewer: str) -> str:
    material = "|".join((first_id, second_id, timestamp, reviewer))
    return hashlib.sha256(material.encode("utf-8")).hexdigest()[:16]


@dataclass(frozen=True)
class Verdict:
    first_id: str
    second_id: str
    reviewer: str
    decision: str
    note: str
    timestamp: str
    token: str

    @classmethod
    def create(
        cls,
        first_id: str,
        second_id: str,
        reviewer: str,
        decision: str,
        note: str = "",
        timestamp: str | None = None,
    ) -> "Verdict":
        if decision not in VERDICT_DECISIONS:
            raise MalformedInput(
                "decision", f"{decision!r} not in {sorted(VERDICT_DECISIONS)}"
            )
        if not reviewer.strip():
            raise MalformedInput("reviewer", "must be nonempty")
        ts = timestamp or _now()
        return cls(
            first_id=first_id,
            second_id=second_id,
            reviewer=reviewer,
            decision=decision,
            note=note,
            timestamp=ts,
            token=verdict_token(first_id, second_id, ts, reviewer),
        )

    def pair(self) -> tuple[str, str]:
        return (self.first_id, self.second_id)

    def to_dict(self) -> dict:
        return {
            "first": self.first_id,
            "second": self.second_id,
            "reviewer": self.reviewer,
            "decision": self.decision,
            "note": self.note,
            "timestamp": self.timestamp,
            "token": self.token,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Verdict":
        try:
            return cls(
                first_id=data["first"],
                second_id=data["second"],
                reviewer=data["reviewer"],
                decision=data["decision"],
                note=data.get("note", ""),
                timestamp=data["timestamp"],
                token=data["token"],
            )
        except (KeyError, TypeError) as exc:
            raise MalformedInput("verdict", f"missing field: {exc}") from None


class VerdictStore:
    """JSONL-backed store. Appends are serialized with a lock; reads
    replay the whole file, collapsing exact duplicates (same pair,
    timestamp, and reviewer), so a re-appended line cannot double-count."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()

    def append(self, verdict: Verdict) -> Verdict:
        line = json.dumps(verdict.to_dict(), sort_keys=True)
        with self._lock:
            try:
                with self.path.open("a", encoding="utf-8") as fh:
                    fh.write(line + "\n")
            except OSError as exc:
                raise StorageUnavailable(f"cannot append verdict: {exc}") from None
        return verdict

    def all_verdicts(self) -> list[Verdict]:
        """Replay the log in file order, duplicates collapsed."""
        if not self.path.exists():
            return []
        try:
            text = self.path.read_text(encoding="utf-8")
        except OSError as exc:
            raise StorageUnavailable(f"cannot read verdict log: {exc}") from None
        out: list[Verdict] = []
        seen: set[tuple[str, str, str, str]] = set()
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                data = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedInput(
                    f"{self.path.name}:{lineno}", f"invalid JSON: {exc}"
                ) from None
            verdict = Verdict.from_dict(data)
            key = (verdict.first_id, verdict.second_id, verdict.timestamp, verdict.reviewer)
            if key in seen:
                continue
            seen.add(key)
            out.append(verdict)
        return out

    def active_for(self, first_id: str, second_id: str) -> Verdict | None:
        """The latest verdict on a pair, or None."""
        latest = None
        for verdict in self.all_verdicts():
            if verdict.pair() == (first_id, second_id):
                latest = verdict
        return latest
