#!/usr/bin/env python3
"""Long differential-fuzz campaign with an aggregate summary.

Emits one JSON verdict line per seed (same shape as `vheap fuzz`), then
a summary block with telemetry totals.  Non-zero exit if any seed fails.

    python scripts/fuzz_sweep.py --seeds 500 --ops 20000
    python scripts/fuzz_sweep.py --seeds 100 --ops 2000 --audit-every 1
"""

import argparse
import json
import sys
import time

sys.path.insert(0, "src")

from violationheap.oracle import DEFAULT_WEIGHTS, parse_weights, run_differential


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=100)
    ap.add_argument("--seed-base", type=int, default=0)
    ap.add_argument("--ops", type=int, default=10_000)
    ap.add_argument("--weights", type=parse_weights, default=DEFAULT_WEIGHTS)
    ap.add_argument("--audit-every", type=int, default=None)
    args = ap.parse_args()

    t0 = time.perf_counter()
    failures = 0
    totals = {"inserts": 0, "deletes": 0, "decreases": 0, "melds": 0,
              "joins": 0, "cuts": 0, "rank_update_steps": 0, "audits": 0}
    max_rank = 0
    for seed in range(args.seed_base, args.seed_base + args.seeds):
        v = run_differential(seed, args.ops, weights=args.weights,
                             audit_every=args.audit_every)
        print(v.to_json(), flush=True)
        if not v.passed:
            failures += 1
        for k in totals:
            totals[k] += getattr(v, k)
        max_rank = max(max_rank, v.max_rank)

    wall = time.perf_counter() - t0
    summary = {
        "seeds": args.seeds,
        "ops_per_seed": args.ops,
        "failures": failures,
        "wall_s": round(wall, 2),
        "max_rank": max_rank,
        "steps_per_decrease": round(
            totals["rank_update_steps"] / max(1, totals["decreases"]), 5),
        "joins_per_delete": round(
            totals["joins"] / max(1, totals["deletes"]), 3),
        **totals,
    }
    print(json.dumps({"summary": summary}))
    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
