"""HTTP service over a loaded corpus: document lookup, flagged-pair
listing, on-demand pair reports, reviewer verdicts guarded by supersede
tokens, and live threshold swaps.

Scores are computed once and cached; thresholds only affect the flag
derivation, so swapping them re-labels cached reports without changing a
single score byte. All error responses share the {error, detail} shape.
"""

from __future__ import annotations

import tempfile
import threading
from pathlib import Path

from fastapi import Body, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .config import EngineConfig, Thresholds
from .corpus import Corpus, document_to_dict
from .detect import (
    ReuseIndex,
    SimilarityReport,
    build_index,
    canonical_pair,
    channel_scalars,
    detailed_analysis,
    flag_suspicion,
    level_rank,
    report_to_dict,
    retrieve_candidates,
    LEVELS,
)
from .errors import (
    InvalidThresholds,
    InvariantViolation,
    MalformedInput,
    MathdupError,
    ParseError,
    StorageUnavailable,
    UnknownDocId,
    UnsupportedField,
)
from .verdicts import Verdict, VerdictStore


class AppError(Exception):
    def __init__(self, status: int, error: str, detail: str):
        super().__init__(detail)
        self.status = status
        self.error = error
        self.detail = detail


class VerdictBody(BaseModel):
    reviewer: str
    decision: str
    note: str = ""
    expected_token: str | None = None


class _State:
    def __init__(self, corpus: Corpus, config: EngineConfig, store: VerdictStore):
        self.corpus = corpus
        self.config = config
        self.thresholds = config.thresholds
        self.store = store
        self.lock = threading.Lock()
        self.index: ReuseIndex | None = None
        self.report_cache: dict[tuple[str, str], SimilarityReport] = {}
        self.scanned = False

    def ensure_index(self) -> ReuseIndex:
        with self.lock:
            if self.index is None:
                self.index = build_index(self.corpus, self.config)
            return self.index

    def pair_report(self, id_a: str, id_b: str) -> SimilarityReport:
        doc_a = self.corpus.get(id_a)
        doc_b = self.corpus.get(id_b)
        if doc_a.id == doc_b.id:
            raise AppError(400, "bad_pair", "a document cannot be compared with itself")
        first, second = canonical_pair(doc_a, doc_b)
        key = (first.id, second.id)
        with self.lock:
            cached = self.report_cache.get(key)
        if cached is not None:
            return cached
        report = detailed_analysis(first, second, self.config)
        with self.lock:
            self.report_cache[key] = report
        return report

    def ensure_scan(self) -> None:
        """Analyze every retrieved candidate pair once and cache the
        reports; flags are derived per-request from current thresholds."""
        with self.lock:
            if self.scanned:
                return
        index = self.ensure_index()
        seen: set[tuple[str, str]] = set()
        for doc in self.corpus:
            for cand in retrieve_candidates(
                index, doc.id, k=self.config.retrieval.k, retrieval=self.config.retrieval
            ):
                other = self.corpus.get(cand.doc_id)
                first, second = canonical_pair(doc, other)
                key = (first.id, second.id)
                if key in seen:
                    continue
                seen.add(key)
                with self.lock:
                    if key not in self.report_cache:
                        self.report_cache[key] = detailed_analysis(first, second, self.config)
        with self.lock:
            self.scanned = True


def _doc_summary(doc) -> dict:
    return {
        "id": doc.id,
        "title": doc.title,
        "authors": list(doc.authors),
        "year": doc.publication_year,
        "language": doc.language,
        "journal": doc.journal,
        "formula_count": len(doc.formulae),
        "reference_count": len(doc.references),
    }


def create_app(
    corpus: Corpus,
    config: EngineConfig | None = None,
    verdict_path: str | Path | None = None,
) -> FastAPI:
    config = config or EngineConfig()
    if verdict_path is None:
        verdict_path = Path(tempfile.mkdtemp(prefix="mathdup-")) / "verdicts.jsonl"
    state = _State(corpus, config, VerdictStore(verdict_path))

    app = FastAPI(title="mathdup", docs_url=None, redoc_url=None)
    # review tooling is served as static files from a different origin
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def envelope(status: int, error: str, detail: str) -> JSONResponse:
        return JSONResponse(status_code=status, content={"error": error, "detail": detail})

    @app.exception_handler(AppError)
    async def _app_error(request: Request, exc: AppError):
        return envelope(exc.status, exc.error, exc.detail)

    @app.exception_handler(UnknownDocId)
    async def _unknown_doc(request: Request, exc: UnknownDocId):
        return envelope(404, "unknown_document", str(exc))

    @app.exception_handler(StorageUnavailable)
    async def _storage(request: Request, exc: StorageUnavailable):
        return envelope(503, "storage_unavailable", str(exc))

    @app.exception_handler(MathdupError)
    async def _domain_error(request: Request, exc: MathdupError):
        # remaining domain errors are caller mistakes
        if isinstance(exc, (MalformedInput, InvalidThresholds, InvariantViolation,
                            ParseError, UnsupportedField)):
            return envelope(400, "bad_request", str(exc))
        return envelope(500, "internal_error", str(exc))

    @app.exception_handler(RequestValidationError)
    async def _validation(request: Request, exc: RequestValidationError):
        return envelope(400, "bad_request", str(exc.errors()))

    @app.get("/health")
    def health():
        return {"status": "ok", "documents": len(state.corpus)}

    @app.get("/documents")
    def list_documents():
        docs = sorted(state.corpus, key=lambda d: d.id)
        return {"documents": [_doc_summary(d) for d in docs]}

    @app.get("/documents/{doc_id}")
    def get_document(doc_id: str):
        return document_to_dict(state.corpus.get(doc_id))

    @app.get("/pairs")
    def list_pairs(min_flag: str = "warning"):
        if min_flag not in LEVELS:
            raise AppError(
                400, "bad_request", f"min_flag must be one of {', '.join(LEVELS)}"
            )
        state.ensure_scan()
        min_rank = level_rank(min_flag)
        with state.lock:
            reports = list(state.report_cache.values())
        rows = []
        for report in reports:
            flags = flag_suspicion(report, state.thresholds)
            if level_rank(flags.combined) < min_rank:
                continue
            rows.append(
                {
                    "first": report.first_id,
                    "second": report.second_id,
                    "flags": flags.to_dict(),
                    "scores": channel_scalars(report),
                }
            )
        rows.sort(
            key=lambda r: (-level_rank(r["flags"]["combined"]), r["first"], r["second"])
        )
        return {"pairs": rows}

    @app.get("/pairs/{id_a}/{id_b}/report")
    def pair_report(id_a: str, id_b: str):
        report = state.pair_report(id_a, id_b)
        flags = flag_suspicion(report, state.thresholds)
        return report_to_dict(report, flags)

    @app.post("/pairs/{id_a}/{id_b}/verdict", status_code=201)
    def post_verdict(id_a: str, id_b: str, body: VerdictBody):
        doc_a = state.corpus.get(id_a)
        doc_b = state.corpus.get(id_b)
        if doc_a.id == doc_b.id:
            raise AppError(400, "bad_pair", "a document cannot be compared with itself")
        first, second = canonical_pair(doc_a, doc_b)
        active = state.store.active_for(first.id, second.id)
        if active is not None and body.expected_token != active.token:
            raise AppError(
                409,
                "verdict_conflict",
                f"pair has an active verdict; supersede it by sending its token {active.token}",
            )
        verdict = Verdict.create(
            first_id=first.id,
            second_id=second.id,
            reviewer=body.reviewer,
            decision=body.decision,
            note=body.note,
        )
        state.store.append(verdict)
        return verdict.to_dict()

    @app.get("/verdicts")
    def list_verdicts():
        return {"verdicts": [v.to_dict() for v in state.store.all_verdicts()]}

    @app.get("/thresholds")
    def get_thresholds():
        return state.thresholds.to_dict()

    @app.post("/thresholds")
    def set_thresholds(payload: dict = Body(...)):
        new = Thresholds.from_dict(payload)
        with state.lock:
            state.thresholds = new
        return new.to_dict()

    return app
