"""Command-line front end.

Machine-readable results go to stdout (JSON, except `query`, which prints
bare ids one per line); progress and summaries go to stderr. Exit codes:
0 success, 1 operational failure, 2 bad input or usage.
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from .config import EngineConfig
from .corpus import (
    corpus_stats,
    document_to_dict,
    load_corpus,
    load_document,
    save_document,
)
from .detect import (
    LEVELS,
    build_index,
    channel_scalars,
    detailed_analysis,
    evaluate_retrieval,
    flag_suspicion,
    report_to_dict,
    save_index,
    scan_corpus,
)
from .errors import (
    DuplicateDocId,
    InvalidThresholds,
    InvariantViolation,
    MalformedInput,
    MathdupError,
    ParseError,
    UnknownDocId,
    UnresolvedDocument,
    UnsupportedField,
)
from .query import run_query

_INPUT_ERRORS = (
    MalformedInput,
    ParseError,
    UnsupportedField,
    InvalidThresholds,
    UnknownDocId,
    DuplicateDocId,
    InvariantViolation,
    UnresolvedDocument,
)


def _guard(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except _INPUT_ERRORS as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
        except MathdupError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)

    return wrapper


def _emit(data) -> None:
    click.echo(json.dumps(data, sort_keys=True, indent=2))


def _note(message: str) -> None:
    click.echo(message, err=True)


def _load_config(path: str | None) -> EngineConfig:
    if path is None:
        return EngineConfig()
    return EngineConfig.from_file(path)


@click.group()
def main():
    """Content-reuse screening for mathematical literature."""


@main.command()
@click.argument("files", nargs=-1, required=True, type=click.Path(exists=True))
@click.option("--out", type=click.Path(file_okay=False), default=None,
              help="Directory to write validated documents into, one <id>.json each.")
@_guard
def ingest(files, out):
    """Validate document JSON files and optionally normalize them into a
    corpus directory."""
    ids = []
    out_dir = Path(out) if out else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    for name in files:
        doc = load_document(name)
        ids.append(doc.id)
        if out_dir:
            save_document(doc, out_dir / f"{doc.id}.json")
    _note(f"ingested {len(ids)} document(s)")
    _emit({"ingested": len(ids), "ids": sorted(ids)})


@main.command()
@click.option("--corpus", "corpus_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@_guard
def index(corpus_dir, out, config_path):
    """Build the candidate-retrieval index for a corpus and save it."""
    config = _load_config(config_path)
    corpus = load_corpus(corpus_dir)
    idx = build_index(corpus, config)
    save_index(idx, out)
    _note(f"indexed {len(idx)} document(s) -> {out}")
    _emit({"documents": len(idx), "path": str(out)})


@main.command()
@click.option("--corpus", "corpus_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.argument("query_text")
@_guard
def query(corpus_dir, query_text):
    """Run a screening query; matching document ids print one per line."""
    corpus = load_corpus(corpus_dir)
    ids = run_query(query_text, corpus)
    for doc_id in ids:
        click.echo(doc_id)
    _note(f"{len(ids)} match(es)")


@main.command()
@click.option("--corpus", "corpus_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.argument("id_a")
@click.argument("id_b")
@_guard
def compare(corpus_dir, config_path, id_a, id_b):
    """Detailed pairwise report for two documents."""
    config = _load_config(config_path)
    corpus = load_corpus(corpus_dir)
    report = detailed_analysis(corpus.get(id_a), corpus.get(id_b), config)
    flags = flag_suspicion(report, config.thresholds)
    _note(
        f"{report.first_id} vs {report.second_id}: combined={flags.combined} "
        f"flagged={','.join(flags.flagged) or '-'}"
    )
    _emit(report_to_dict(report, flags))


@main.command()
@click.option("--corpus", "corpus_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--min-flag", "min_flag", default="warning", type=click.Choice(list(LEVELS)))
@_guard
def scan(corpus_dir, config_path, min_flag):
    """Retrieve and analyze candidate pairs across the whole corpus."""
    config = _load_config(config_path)
    corpus = load_corpus(corpus_dir)
    results = scan_corpus(corpus, config, min_level=min_flag)
    rows = [
        {
            "first": report.first_id,
            "second": report.second_id,
            "flags": flags.to_dict(),
            "scores": channel_scalars(report),
        }
        for report, flags in results
    ]
    _note(f"{len(rows)} pair(s) at {min_flag} or above")
    _emit({"pairs": rows})


@main.command()
@click.option("--corpus", "corpus_dir", required=True, type=click.Path(exists=True, file_okay=False))
@_guard
def stats(corpus_dir):
    """Corpus frequency tables: journals, authors, years."""
    corpus = load_corpus(corpus_dir)
    summary = corpus_stats(corpus)
    payload = summary.to_dict()
    payload["journal_count_histogram"] = {
        str(k): v for k, v in sorted(summary.count_histogram(summary.journal_counts).items())
    }
    payload["author_count_histogram"] = {
        str(k): v for k, v in sorted(summary.count_histogram(summary.author_counts).items())
    }
    _note(
        f"{summary.documents} document(s), {len(summary.journal_counts)} journal(s), "
        f"{len(summary.author_counts)} author(s)"
    )
    _emit(payload)


@main.command(name="eval")
@click.option("--seed", default=20240501, show_default=True)
@click.option("--size", default=500, show_default=True)
@click.option("--k", default=10, show_default=True)
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@_guard
def eval_retrieval(seed, size, k, config_path):
    """Retrieval quality on the seeded synthetic benchmark."""
    from .benchmark import make_benchmark

    config = _load_config(config_path)
    corpus, planted = make_benchmark(seed=seed, size=size)
    idx = build_index(corpus, config)
    result = evaluate_retrieval(
        idx,
        [(p.query_id, p.expected_id) for p in planted],
        k=k,
        retrieval=config.retrieval,
    )
    _note(
        f"benchmark seed={seed} size={size}: mrr={result.mrr:.3f} "
        f"recall@{k}={result.recall_at_k:.3f}"
    )
    _emit(
        {
            "seed": seed,
            "size": size,
            "k": k,
            "mrr": result.mrr,
            "recall_at_k": result.recall_at_k,
            "ranks": dict(sorted(result.ranks.items())),
        }
    )


@main.command()
@click.option("--corpus", "corpus_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--verdicts", "verdict_path", type=click.Path(dir_okay=False), default=None)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8722, show_default=True)
@_guard
def serve(corpus_dir, config_path, verdict_path, host, port):
    """Run the HTTP service."""
    import uvicorn

    from .server import create_app

    config = _load_config(config_path)
    corpus = load_corpus(corpus_dir)
    app = create_app(corpus, config, verdict_path)
    _note(f"serving {len(corpus)} document(s) on {host}:{port}")
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
