"""Math-aware content-reuse screening for scholarly corpora.

Three comparison channels (text fingerprints, math features, citation
patterns) feed a two-stage pipeline: fast candidate retrieval over
inverted indexes, then detailed pairwise analysis with suspicion
flagging. A fielded query language screens the corpus, and a small HTTP
service exposes reports and reviewer verdicts.
"""

from .config import (
    ChannelThreshold,
    CiteConfig,
    EngineConfig,
    RetrievalConfig,
    TextConfig,
    Thresholds,
)
from .corpus import (
    CaseManifest,
    CitationMarker,
    Corpus,
    Document,
    Formula,
    MathToken,
    StatsSummary,
    corpus_stats,
    document_from_dict,
    document_to_dict,
    load_corpus,
    load_document,
    load_manifest,
    save_document,
)
from .detect import (
    Candidate,
    ReuseIndex,
    RetrievalEval,
    SimilarityReport,
    SuspicionFlags,
    build_index,
    canonical_pair,
    channel_scalars,
    detailed_analysis,
    evaluate_retrieval,
    flag_suspicion,
    index_from_json,
    index_to_json,
    load_index,
    report_from_dict,
    report_to_dict,
    retrieve_candidates,
    save_index,
    scan_corpus,
)
from .errors import (
    DuplicateDocId,
    EmptyCorpus,
    EmptyIndex,
    InvalidThresholds,
    InvariantViolation,
    MalformedInput,
    MathdupError,
    ParseError,
    StorageUnavailable,
    UnknownDocId,
    UnresolvedDocument,
    UnsupportedField,
)
from .mathsim import (
    MathFeatureVector,
    MathReuseLabel,
    canonicalize_formula,
    classify_math_reuse,
    extract_features,
    histogram_similarity,
    identifier_sequence_similarity,
    parse_formula_tokens,
)
from .query import evaluate_query, matches_document, parse_query, query_to_text, run_query
from .citesim import (
    ReferenceRecord,
    bibliographic_coupling,
    citation_sequence_similarity,
    match_references,
    normalize_reference,
)
from .textsim import (
    TextSimilarity,
    fingerprint_winnow,
    text_similarity,
    tokenize,
)
from .verdicts import Verdict, VerdictStore

__version__ = "0.1.0"
