#!/usr/bin/env python3
"""Retrieval-quality experiment on the seeded benchmark, broken down by
planted pair kind.

The `eval` CLI command reports the overall numbers; this script adds a
per-kind table and timing split (index build vs ranking), which is what
you want when one channel regresses.
"""

import argparse
import json
import sys
import time
from collections import defaultdict
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from mathdup.benchmark import make_benchmark
from mathdup.detect import build_index, evaluate_retrieval


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=20240501)
    parser.add_argument("--size", type=int, default=500)
    parser.add_argument("--k", type=int, default=10)
    parser.add_argument(
        "--json", type=Path, default=None, help="also write results as JSON"
    )
    args = parser.parse_args()

    t0 = time.monotonic()
    corpus, planted = make_benchmark(seed=args.seed, size=args.size)
    t1 = time.monotonic()
    index = build_index(corpus)
    t2 = time.monotonic()

    by_kind = defaultdict(list)
    for pair in planted:
        by_kind[pair.kind].append((pair.query_id, pair.expected_id))

    overall = evaluate_retrieval(
        index, [(p.query_id, p.expected_id) for p in planted], k=args.k
    )
    t3 = time.monotonic()

    rows = []
    for kind in sorted(by_kind):
        result = evaluate_retrieval(index, by_kind[kind], k=args.k)
        rows.append((kind, len(by_kind[kind]), result.mrr, result.recall_at_k))
    rows.append(("overall", len(planted), overall.mrr, overall.recall_at_k))

    print(f"seed={args.seed} size={args.size} k={args.k}")
    print(f"generate {t1 - t0:.2f}s  index {t2 - t1:.2f}s  rank {t3 - t2:.2f}s")
    print(f"{'kind':<10} {'pairs':>5} {'mrr':>7} {'recall@k':>9}")
    for kind, count, mrr, recall in rows:
        print(f"{kind:<10} {count:>5} {mrr:>7.3f} {recall:>9.3f}")
    worst = sorted(overall.ranks.items(), key=lambda kv: -kv[1])[:5]
    print("hardest queries:", ", ".join(f"{q} at rank {r}" for q, r in worst))

    if args.json is not None:
        args.json.write_text(
            json.dumps(
                {
                    "seed": args.seed,
                    "size": args.size,
                    "k": args.k,
                    "timing": {
                        "generate_s": round(t1 - t0, 3),
                        "index_s": round(t2 - t1, 3),
                        "rank_s": round(t3 - t2, 3),
                    },
                    "by_kind": {
                        kind: {"pairs": count, "mrr": mrr, "recall_at_k": recall}
                        for kind, count, mrr, recall in rows
                    },
                    "ranks": dict(sorted(overall.ranks.items())),
                },
                indent=2,
            )
            + "\n",
            encoding="utf-8",
        )
        print(f"wrote {args.json}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
