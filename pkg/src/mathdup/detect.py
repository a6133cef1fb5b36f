"""Two-stage reuse detection: a lightweight candidate index feeding a
detailed pairwise analysis, plus suspicion flagging and retrieval scoring.

Stage one ranks every indexed document against a query document using
cheap channel overlaps (shared text fingerprints, identifier histogram
cosine, shared reference keys). Stage two runs the full per-channel
comparison on surviving pairs and produces a report whose scores never
depend on thresholds; flags are derived afterwards and can be recomputed
under new thresholds without touching the scores.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from . import citesim, mathsim, textsim
from .config import EngineConfig, RetrievalConfig, TextConfig, Thresholds
from .corpus import Corpus, Document
from .errors import (
    DuplicateDocId,
    EmptyIndex,
    InvariantViolation,
    MalformedInput,
    UnknownDocId,
)

INDEX_VERSION = 1

LEVELS = ("none", "warning", "suspicious")


def level_rank(level: str) -> int:
    try:
        return LEVELS.index(level)
    except ValueError:
        raise InvariantViolation("level", f"{level!r} not in {list(LEVELS)}") from None


@dataclass
class ReuseIndex:
    """Per-document channel summaries plus inverted postings for ranking."""

    text_cfg: TextConfig
    cite_tol: float
    doc_year: dict[str, int] = field(default_factory=dict)
    doc_fp: dict[str, frozenset[int]] = field(default_factory=dict)
    doc_idents: dict[str, dict[str, int]] = field(default_factory=dict)
    doc_refkeys: dict[str, frozenset[str]] = field(default_factory=dict)
    fp_postings: dict[int, set[str]] = field(default_factory=dict)
    ident_postings: dict[str, dict[str, int]] = field(default_factory=dict)
    refkey_postings: dict[str, set[str]] = field(default_factory=dict)
    ident_norm: dict[str, float] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.doc_year)

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self.doc_year

    def ids(self) -> list[str]:
        return sorted(self.doc_year)

    def add_document(self, doc: Document) -> None:
        if doc.id in self.doc_year:
            raise DuplicateDocId(doc.id)
        self.doc_year[doc.id] = doc.publication_year
        fps = frozenset(
            f.hash for f in textsim.document_fingerprints(doc, self.text_cfg)
        )
        self.doc_fp[doc.id] = fps
        for h in fps:
            self.fp_postings.setdefault(h, set()).add(doc.id)
        features = mathsim.extract_features(doc)
        self.doc_idents[doc.id] = features.identifier_freq
        self.ident_norm[doc.id] = math.sqrt(
            sum(c * c for c in features.identifier_freq.values())
        )
        for ident, count in features.identifier_freq.items():
            self.ident_postings.setdefault(ident, {})[doc.id] = count
        keys = frozenset(r.match_key for r in doc.references)
        self.doc_refkeys[doc.id] = keys
        for key in keys:
            self.refkey_postings.setdefault(key, set()).add(doc.id)


def build_index(corpus: Corpus, config: EngineConfig | None = None) -> ReuseIndex:
    config = config or EngineConfig()
    index = ReuseIndex(text_cfg=config.text, cite_tol=config.cite.tol)
    for doc in corpus:
        index.add_document(doc)
    return index


def index_to_json(index: ReuseIndex) -> str:
    """Deterministic serialization: same index, same bytes."""
    docs = {
        doc_id: {
            "year": index.doc_year[doc_id],
            "fingerprints": sorted(index.doc_fp[doc_id]),
            "identifiers": dict(sorted(index.doc_idents[doc_id].items())),
            "refkeys": sorted(index.doc_refkeys[doc_id]),
        }
        for doc_id in sorted(index.doc_year)
    }
    payload = {
        "version": INDEX_VERSION,
        "text": {
            "ngram": index.text_cfg.ngram,
            "window": index.text_cfg.window,
            "hash_seed": index.text_cfg.hash_seed,
        },
        "cite_tol": index.cite_tol,
        "docs": docs,
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def index_from_json(text: str) -> ReuseIndex:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput("index", f"invalid JSON: {exc}") from None
    if not isinstance(payload, dict) or payload.get("version") != INDEX_VERSION:
        raise MalformedInput(
            "index.version", f"expected version {INDEX_VERSION}"
        )
    text_cfg = TextConfig(
        ngram=payload["text"]["ngram"],
        window=payload["text"]["window"],
        hash_seed=payload["text"]["hash_seed"],
    )
    index = ReuseIndex(text_cfg=text_cfg, cite_tol=payload["cite_tol"])
    for doc_id, entry in payload["docs"].items():
        index.doc_year[doc_id] = entry["year"]
        fps = frozenset(entry["fingerprints"])
        index.doc_fp[doc_id] = fps
        for h in fps:
            index.fp_postings.setdefault(h, set()).add(doc_id)
        idents = dict(entry["identifiers"])
        index.doc_idents[doc_id] = idents
        index.ident_norm[doc_id] = math.sqrt(sum(c * c for c in idents.values()))
        for ident, count in idents.items():
            index.ident_postings.setdefault(ident, {})[doc_id] = count
        keys = frozenset(entry["refkeys"])
        index.doc_refkeys[doc_id] = keys
        for key in keys:
            index.refkey_postings.setdefault(key, set()).add(doc_id)
    return index


def save_index(index: ReuseIndex, path: str | Path) -> None:
    Path(path).write_text(index_to_json(index), encoding="utf-8")


def load_index(path: str | Path) -> ReuseIndex:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedInput(str(path), str(exc)) from None
    return index_from_json(text)


@dataclass(frozen=True)
class Candidate:
    doc_id: str
    prescore: float
    channel_scores: dict[str, float]


def retrieve_candidates(
    index: ReuseIndex,
    doc_id: str,
    k: int | None = 10,
    retrieval: RetrievalConfig | None = None,
) -> list[Candidate]:
    """Rank all other indexed documents against ``doc_id``.

    Every document gets a rank, including zero-overlap ones, so recall
    metrics are always defined; ``k`` truncates the returned list (None
    keeps everything). Ties break on ascending document id.
    """
    if len(index) == 0:
        raise EmptyIndex()
    if doc_id not in index:
        raise UnknownDocId(doc_id)
    retrieval = retrieval or RetrievalConfig()
    total_weight = retrieval.text_weight + retrieval.math_weight + retrieval.cite_weight
    if total_weight <= 0:
        raise InvariantViolation("retrieval", "channel weights sum to zero")

    fp_q = index.doc_fp[doc_id]
    shared_fp: dict[str, int] = {}
    for h in fp_q:
        for other in index.fp_postings.get(h, ()):
            if other != doc_id:
                shared_fp[other] = shared_fp.get(other, 0) + 1

    idents_q = index.doc_idents[doc_id]
    norm_q = index.ident_norm[doc_id]
    dot: dict[str, float] = {}
    for ident, count in idents_q.items():
        for other, other_count in index.ident_postings.get(ident, {}).items():
            if other != doc_id:
                dot[other] = dot.get(other, 0.0) + count * other_count

    keys_q = index.doc_refkeys[doc_id]
    shared_keys: dict[str, int] = {}
    for key in keys_q:
        for other in index.refkey_postings.get(key, ()):
            if other != doc_id:
                shared_keys[other] = shared_keys.get(other, 0) + 1

    candidates = []
    for other in index.doc_year:
        if other == doc_id:
            continue
        text_score = 0.0
        if fp_q and index.doc_fp[other]:
            text_score = shared_fp.get(other, 0) / min(len(fp_q), len(index.doc_fp[other]))
        math_score = 0.0
        norm_other = index.ident_norm[other]
        if norm_q > 0 and norm_other > 0:
            math_score = min(1.0, dot.get(other, 0.0) / (norm_q * norm_other))
        cite_score = 0.0
        if keys_q and index.doc_refkeys[other]:
            cite_score = shared_keys.get(other, 0) / min(
                len(keys_q), len(index.doc_refkeys[other])
            )
        prescore = (
            retrieval.text_weight * text_score
            + retrieval.math_weight * math_score
            + retrieval.cite_weight * cite_score
        ) / total_weight
        candidates.append(
            Candidate(
                doc_id=other,
                prescore=prescore,
                channel_scores={
                    "text": text_score,
                    "math": math_score,
                    "cite": cite_score,
                },
            )
        )
    candidates.sort(key=lambda c: (-c.prescore, c.doc_id))
    if k is not None:
        candidates = candidates[:k]
    return candidates


@dataclass(frozen=True)
class TextChannel:
    available: bool
    jaccard: float
    containment_first_in_second: float
    containment_second_in_first: float
    both_empty: bool
    matched_spans: tuple[textsim.SpanPair, ...]


@dataclass(frozen=True)
class MathChannel:
    available: bool
    histogram: float
    sequence: float
    category: str
    evidence: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class CiteChannel:
    available: bool
    coupling: float
    sequence: float


@dataclass(frozen=True)
class SimilarityReport:
    """Pairwise comparison in canonical orientation: the earlier document
    (by year, then id) is always ``first``, so both argument orders yield
    the identical report."""

    first_id: str
    second_id: str
    first_year: int
    second_year: int
    text: TextChannel
    math: MathChannel
    cite: CiteChannel


def canonical_pair(a: Document, b: Document) -> tuple[Document, Document]:
    if (a.publication_year, a.id) <= (b.publication_year, b.id):
        return a, b
    return b, a


def detailed_analysis(a: Document, b: Document, config: EngineConfig | None = None) -> SimilarityReport:
    """Full per-channel comparison of one document pair.

    Math scores need formulae on both sides, citation scores need
    references on both sides; a side missing them leaves that channel
    marked unavailable rather than scored zero.
    """
    if a.id == b.id:
        raise InvariantViolation("pair", f"cannot compare {a.id!r} with itself")
    config = config or EngineConfig()
    first, second = canonical_pair(a, b)

    sim = textsim.text_similarity(first, second, config.text)
    text = TextChannel(
        available=True,
        jaccard=sim.jaccard,
        containment_first_in_second=sim.containment_a_in_b,
        containment_second_in_first=sim.containment_b_in_a,
        both_empty=sim.both_empty,
        matched_spans=sim.matched_spans,
    )

    math_available = bool(first.formulae) and bool(second.formulae)
    if math_available:
        feats_first = mathsim.extract_features(first)
        feats_second = mathsim.extract_features(second)
        label = mathsim.classify_math_reuse(first, second)
        math_channel = MathChannel(
            available=True,
            histogram=mathsim.histogram_similarity(feats_first, feats_second),
            sequence=mathsim.identifier_sequence_similarity(feats_first, feats_second),
            category=label.category,
            evidence=label.evidence,
        )
    else:
        math_channel = MathChannel(
            available=False, histogram=0.0, sequence=0.0, category="unrelated", evidence=()
        )

    cite_available = bool(first.references) and bool(second.references)
    if cite_available:
        cite_channel = CiteChannel(
            available=True,
            coupling=citesim.bibliographic_coupling(first, second, config.cite.tol),
            sequence=citesim.citation_sequence_similarity(first, second, config.cite.tol),
        )
    else:
        cite_channel = CiteChannel(available=False, coupling=0.0, sequence=0.0)

    return SimilarityReport(
        first_id=first.id,
        second_id=second.id,
        first_year=first.publication_year,
        second_year=second.publication_year,
        text=text,
        math=math_channel,
        cite=cite_channel,
    )


def channel_scalars(report: SimilarityReport) -> dict[str, float | None]:
    """One flagging scalar per channel; None when the channel is
    unavailable (distinct from a true zero)."""
    return {
        "text": report.text.jaccard,
        "math": report.math.histogram if report.math.available else None,
        "cite": max(report.cite.coupling, report.cite.sequence)
        if report.cite.available
        else None,
    }


@dataclass(frozen=True)
class SuspicionFlags:
    levels: dict[str, str]
    combined: str
    flagged: tuple[str, ...]  # channels above none, sorted

    def to_dict(self) -> dict:
        out = dict(sorted(self.levels.items()))
        out["combined"] = self.combined
        out["flagged"] = list(self.flagged)
        return out


def flag_suspicion(report: SimilarityReport, thresholds: Thresholds | None = None) -> SuspicionFlags:
    """Threshold each channel scalar (strictly above a bound trips it);
    the combined level is the worst channel level."""
    thresholds = thresholds or Thresholds()
    scalars = channel_scalars(report)
    levels = {}
    for channel, score in scalars.items():
        if score is None:
            levels[channel] = "none"
        else:
            levels[channel] = thresholds.for_channel(channel).level(score)
    combined = max(levels.values(), key=level_rank)
    flagged = tuple(sorted(ch for ch, lvl in levels.items() if lvl != "none"))
    return SuspicionFlags(levels=levels, combined=combined, flagged=flagged)


def report_to_dict(report: SimilarityReport, flags: SuspicionFlags | None = None) -> dict:
    """JSON form; the "channels" section is a pure function of the pair and
    scoring config, so re-flagging leaves it byte-identical."""
    channels = {
        "text": {
            "available": report.text.available,
            "jaccard": report.text.jaccard,
            "containment_first_in_second": report.text.containment_first_in_second,
            "containment_second_in_first": report.text.containment_second_in_first,
            "both_empty": report.text.both_empty,
            "matched_spans": [
                {
                    "first_start": s.a_start,
                    "first_end": s.a_end,
                    "second_start": s.b_start,
                    "second_end": s.b_end,
                }
                for s in report.text.matched_spans
            ],
        },
        "math": {
            "available": report.math.available,
            "histogram": report.math.histogram,
            "sequence": report.math.sequence,
            "category": report.math.category,
            "evidence": [list(pair) for pair in report.math.evidence],
        },
        "cite": {
            "available": report.cite.available,
            "coupling": report.cite.coupling,
            "sequence": report.cite.sequence,
        },
    }
    out = {
        "pair": {
            "first": report.first_id,
            "second": report.second_id,
            "first_year": report.first_year,
            "second_year": report.second_year,
        },
        "channels": channels,
    }
    if flags is not None:
        out["flags"] = flags.to_dict()
    return out


def report_from_dict(data: dict) -> SimilarityReport:
    try:
        pair = data["pair"]
        channels = data["channels"]
        text = channels["text"]
        math_ch = channels["math"]
        cite = channels["cite"]
        return SimilarityReport(
            first_id=pair["first"],
            second_id=pair["second"],
            first_year=pair["first_year"],
            second_year=pair["second_year"],
            text=TextChannel(
                available=text["available"],
                jaccard=text["jaccard"],
                containment_first_in_second=text["containment_first_in_second"],
                containment_second_in_first=text["containment_second_in_first"],
                both_empty=text["both_empty"],
                matched_spans=tuple(
                    textsim.SpanPair(
                        s["first_start"], s["first_end"], s["second_start"], s["second_end"]
                    )
                    for s in text["matched_spans"]
                ),
            ),
            math=MathChannel(
                available=math_ch["available"],
                histogram=math_ch["histogram"],
                sequence=math_ch["sequence"],
                category=math_ch["category"],
                evidence=tuple((p[0], p[1]) for p in math_ch["evidence"]),
            ),
            cite=CiteChannel(
                available=cite["available"],
                coupling=cite["coupling"],
                sequence=cite["sequence"],
            ),
        )
    except (KeyError, IndexError, TypeError) as exc:
        raise MalformedInput("report", f"missing or malformed field: {exc}") from None


def scan_corpus(
    corpus: Corpus,
    config: EngineConfig | None = None,
    index: ReuseIndex | None = None,
    min_level: str = "warning",
) -> list[tuple[SimilarityReport, SuspicionFlags]]:
    """Retrieve candidates for every document, analyze each distinct pair
    once, and keep pairs whose combined level reaches ``min_level``.

    Sorted by descending combined level, then pair ids.
    """
    config = config or EngineConfig()
    min_rank = level_rank(min_level)
    if index is None:
        index = build_index(corpus, config)
    seen: set[tuple[str, str]] = set()
    results = []
    for doc in corpus:
        for cand in retrieve_candidates(
            index, doc.id, k=config.retrieval.k, retrieval=config.retrieval
        ):
            other = corpus.get(cand.doc_id)
            first, second = canonical_pair(doc, other)
            key = (first.id, second.id)
            if key in seen:
                continue
            seen.add(key)
            report = detailed_analysis(first, second, config)
            flags = flag_suspicion(report, config.thresholds)
            if level_rank(flags.combined) >= min_rank:
                results.append((report, flags))
    results.sort(
        key=lambda item: (
            -level_rank(item[1].combined),
            item[0].first_id,
            item[0].second_id,
        )
    )
    return results


@dataclass(frozen=True)
class RetrievalEval:
    mrr: float
    recall_at_k: float
    k: int
    ranks: dict[str, int]  # query id -> 1-based rank of its expected partner


def evaluate_retrieval(
    index: ReuseIndex,
    expected_pairs: Sequence[tuple[str, str]] | Iterable[tuple[str, str]],
    k: int = 10,
    retrieval: RetrievalConfig | None = None,
) -> RetrievalEval:
    """Mean reciprocal rank and recall@k of the expected partner over the
    full ranking for each query document."""
    pairs = list(expected_pairs)
    if not pairs:
        raise InvariantViolation("eval", "no expected pairs given")
    reciprocal = 0.0
    hits = 0
    ranks: dict[str, int] = {}
    for query_id, expected_id in pairs:
        if expected_id not in index:
            raise UnknownDocId(expected_id)
        candidates = retrieve_candidates(index, query_id, k=None, retrieval=retrieval)
        rank = next(
            i for i, c in enumerate(candidates, start=1) if c.doc_id == expected_id
        )
        ranks[query_id] = rank
        reciprocal += 1.0 / rank
        if rank <= k:
            hits += 1
    return RetrievalEval(
        mrr=reciprocal / len(pairs),
        recall_at_k=hits / len(pairs),
        k=k,
        ranks=ranks,
    )
