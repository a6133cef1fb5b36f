#!/usr/bin/env python3
"""Write the seeded synthetic benchmark to a corpus directory.

Produces one JSON document per file plus a manifest.json recording the
planted reuse pairs, so the ingest/index/query/compare/scan commands and
the HTTP service can run against a corpus with known ground truth.
"""

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from mathdup.benchmark import make_benchmark
from mathdup.corpus import MANIFEST_FILENAME, save_document

# ground-truth review outcome for each planted generator kind
_KIND_LABELS = {
    "verbatim": "plagiarism",
    "formula": "plagiarism",
    "partial": "plagiarism",
    "citation": "compilation",
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("out", type=Path, help="output corpus directory")
    parser.add_argument("--seed", type=int, default=20240501)
    parser.add_argument("--size", type=int, default=500)
    args = parser.parse_args()

    corpus, planted = make_benchmark(seed=args.seed, size=args.size)
    args.out.mkdir(parents=True, exist_ok=True)
    for doc in corpus:
        save_document(doc, args.out / f"{doc.id}.json")

    manifest = [
        {
            "case": case_no,
            "later": pair.query_id,
            "earlier": [pair.expected_id],
            "label": _KIND_LABELS[pair.kind],
            "notes": f"planted {pair.kind} pair, seed {args.seed}",
        }
        for case_no, pair in enumerate(planted, start=1)
    ]
    (args.out / MANIFEST_FILENAME).write_text(
        json.dumps(manifest, indent=2) + "\n", encoding="utf-8"
    )
    print(
        f"wrote {len(corpus)} documents and {len(manifest)} planted cases "
        f"to {args.out}",
        file=sys.stderr,
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
