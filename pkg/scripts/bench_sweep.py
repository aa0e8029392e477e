#!/usr/bin/env python3
"""Sweep all three heaps across workload sizes and print one CSV.

Typical use:

    python scripts/bench_sweep.py --workload heapsort --sizes 1e4,1e5,1e6
    python scripts/bench_sweep.py --workload dijkstra --sizes 1e3,1e4 --arc-factor 10
    python scripts/bench_sweep.py --workload all --repeat 3 > sweep.csv
"""

import argparse
import sys

sys.path.insert(0, "src")

from violationheap.workloads import (CSV_HEADER, HEAP_NAMES, dijkstra_bench,
                                     gen_graph, heapsort_bench, mixed_bench)


def parse_sizes(text):
    return [int(float(tok)) for tok in text.split(",")]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--workload", default="all",
                    choices=("heapsort", "mixed", "dijkstra", "all"))
    ap.add_argument("--sizes", type=parse_sizes, default=[10 ** 4, 10 ** 5],
                    help="comma list; floats like 1e5 accepted")
    ap.add_argument("--arc-factor", type=int, default=10,
                    help="dijkstra arcs per vertex")
    ap.add_argument("--repeat", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    workloads = (("heapsort", "mixed", "dijkstra") if args.workload == "all"
                 else (args.workload,))
    print(CSV_HEADER)
    for workload in workloads:
        for n in args.sizes:
            for rep in range(args.repeat):
                seed = args.seed + rep
                graph = None
                if workload == "dijkstra":
                    graph = gen_graph(n, n * args.arc_factor, seed)
                for heap in HEAP_NAMES:
                    if workload == "heapsort":
                        rec = heapsort_bench(heap, n, seed)
                    elif workload == "mixed":
                        rec = mixed_bench(heap, n, seed)
                    else:
                        rec = dijkstra_bench(heap, graph, seed)
                    print(rec.csv_row(), flush=True)
                    if workload == "dijkstra":
                        print(f"# checksum {heap} seed={seed} {rec.checksum}")


if __name__ == "__main__":
    main()
