"""Engine configuration: fingerprinting, tolerances, thresholds, weights.

Every tunable has a documented default; a JSON config file (see
``EngineConfig.from_file``) or CLI flags can override any of them.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import InvalidThresholds, MalformedInput

# Seed is fixed by default so fingerprint indexes are reproducible run to run.
DEFAULT_HASH_SEED = 0x6D61746864757031


@dataclass(frozen=True)
class TextConfig:
    """Word n-gram fingerprinting parameters.

    Defaults guarantee that any copied passage of >= ngram + window - 1 = 6
    words shares at least one selected fingerprint with its source, so
    verbatim sentences of 8+ words can never be missed.
    """

    ngram: int = 3
    window: int = 4
    hash_seed: int = DEFAULT_HASH_SEED

    def __post_init__(self):
        if self.ngram < 1:
            raise MalformedInput("text.ngram", "must be >= 1")
        if self.window < 1:
            raise MalformedInput("text.window", "must be >= 1")


@dataclass(frozen=True)
class CiteConfig:
    """Reference matching tolerance: edit-distance fraction in [0, 1].

    0.25 lets OCR-grade character noise through while keeping distinct
    same-author papers apart.
    """

    tol: float = 0.25

    def __post_init__(self):
        if not 0.0 <= self.tol <= 1.0:
            raise MalformedInput("cite.tol", "must be in [0, 1]")


@dataclass(frozen=True)
class ChannelThreshold:
    warning: float
    suspicious: float

    def __post_init__(self):
        if self.warning > self.suspicious:
            raise InvalidThresholds(
                f"warning {self.warning} > suspicious {self.suspicious}"
            )

    def level(self, score: float) -> str:
        if score > self.suspicious:
            return "suspicious"
        if score > self.warning:
            return "warning"
        return "none"


@dataclass(frozen=True)
class Thresholds:
    """Per-channel (warning, suspicious) cutoffs; a score strictly above a
    cutoff earns the corresponding level.

    Only the text/suspicious value comes from editorial practice (0.2);
    the rest are calibration constants chosen so that a 0.14 text score
    paired with a 0.19 citation score raises a double warning.
    """

    text: ChannelThreshold = field(default_factory=lambda: ChannelThreshold(0.12, 0.20))
    cite: ChannelThreshold = field(default_factory=lambda: ChannelThreshold(0.15, 0.50))
    math: ChannelThreshold = field(default_factory=lambda: ChannelThreshold(0.60, 0.85))

    def for_channel(self, channel: str) -> ChannelThreshold:
        try:
            return getattr(self, channel)
        except AttributeError:
            raise InvalidThresholds(f"unknown channel {channel!r}") from None

    def to_dict(self) -> dict:
        return {
            ch: {"warning": t.warning, "suspicious": t.suspicious}
            for ch, t in (("text", self.text), ("cite", self.cite), ("math", self.math))
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Thresholds":
        if not isinstance(data, dict):
            raise InvalidThresholds("thresholds must be an object")
        kwargs = {}
        for ch in ("text", "cite", "math"):
            if ch in data:
                entry = data[ch]
                try:
                    kwargs[ch] = ChannelThreshold(
                        float(entry["warning"]), float(entry["suspicious"])
                    )
                except (KeyError, TypeError, ValueError) as exc:
                    raise InvalidThresholds(f"bad entry for channel {ch!r}: {exc}") from None
        unknown = set(data) - {"text", "cite", "math"}
        if unknown:
            raise InvalidThresholds(f"unknown channels: {sorted(unknown)}")
        return cls(**kwargs)


@dataclass(frozen=True)
class RetrievalConfig:
    """Candidate-stage weights for the text/math/cite prescore channels,
    applied after per-channel max-normalization."""

    text_weight: float = 1.0
    math_weight: float = 1.0
    cite_weight: float = 1.0
    k: int = 10


@dataclass(frozen=True)
class EngineConfig:
    text: TextConfig = field(default_factory=TextConfig)
    cite: CiteConfig = field(default_factory=CiteConfig)
    thresholds: Thresholds = field(default_factory=Thresholds)
    retrieval: RetrievalConfig = field(default_factory=RetrievalConfig)

    def to_dict(self) -> dict:
        return {
            "text": dataclasses.asdict(self.text),
            "cite": dataclasses.asdict(self.cite),
            "thresholds": self.thresholds.to_dict(),
            "retrieval": dataclasses.asdict(self.retrieval),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EngineConfig":
        if not isinstance(data, dict):
            raise MalformedInput("config", "top level must be an object")
        known = {"text", "cite", "thresholds", "retrieval"}
        unknown = set(data) - known
        if unknown:
            raise MalformedInput("config", f"unknown sections: {sorted(unknown)}")
        try:
            return cls(
                text=TextConfig(**data.get("text", {})),
                cite=CiteConfig(**data.get("cite", {})),
                thresholds=Thresholds.from_dict(data.get("thresholds", {})),
                retrieval=RetrievalConfig(**data.get("retrieval", {})),
            )
        except TypeError as exc:
            raise MalformedInput("config", str(exc)) from None

    @classmethod
    def from_file(cls, path: str | Path) -> "EngineConfig":
        path = Path(path)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise MalformedInput(str(path), str(exc)) from None
        except json.JSONDecodeError as exc:
            raise MalformedInput(str(path), f"invalid JSON: {exc}") from None
        return cls.from_dict(data)
