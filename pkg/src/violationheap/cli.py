"""Command-line front end: differential fuzzing, trace replay, benchmarks.

Exit codes: 0 success, 1 a fuzz seed failed or a trace/check error, 2
usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .heap_core import HeapError, NodePool
from .invariants import full_audit
from .oracle import DEFAULT_WEIGHTS, parse_weights, run_differential
from .workloads import (CSV_HEADER, HEAP_NAMES, dijkstra_bench, gen_graph,
                        heapsort_bench, mixed_bench, read_dimacs)


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="vheap",
        description="Violation-heap fuzzing, trace replay, and benchmarks")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("fuzz", help="differential fuzzing against a naive queue")
    f.add_argument("--seeds", type=int, default=10,
                   help="number of seeds, starting at --seed-base (default 10)")
    f.add_argument("--seed-base", type=int, default=0)
    f.add_argument("--ops", type=int, default=1000, help="operations per seed")
    f.add_argument("--weights", type=parse_weights, default=DEFAULT_WEIGHTS,
                   metavar="I,D,K,M",
                   help="insert,delete,decrease,meld weights (normalized)")
    f.add_argument("--audit-every", type=int, default=None, metavar="N",
                   help="structural audit cadence; 0 disables, default adapts")

    c = sub.add_parser("check", help="replay a trace file against the heap")
    c.add_argument("trace", help="trace file path, or - for stdin")

    b = sub.add_parser("bench", help="run a workload and print counter records")
    b.add_argument("workload", choices=("heapsort", "mixed", "dijkstra"))
    b.add_argument("--heap", choices=HEAP_NAMES + ("all",), default="all")
    b.add_argument("--n", type=int, default=10000,
                   help="elements (heapsort), ops (mixed), vertices (dijkstra)")
    b.add_argument("--m", type=int, default=50000, help="dijkstra arc count")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--repeat", type=int, default=1,
                   help="run seeds seed..seed+repeat-1")
    b.add_argument("--dimacs", metavar="FILE",
                   help="dijkstra only: read the graph instead of generating")
    b.add_argument("--format", choices=("csv", "json"), default="csv")
    return p


def _cmd_fuzz(args) -> int:
    failures = 0
    for seed in range(args.seed_base, args.seed_base + args.seeds):
        verdict = run_differential(seed, args.ops, weights=args.weights,
                                   audit_every=args.audit_every)
        print(verdict.to_json())
        if not verdict.passed:
            failures += 1
    return 1 if failures else 0


class TraceError(Exception):
    pass


def run_trace(lines, out=None) -> None:
    """Replay a line-oriented trace.  One shared pool; heap names are
    aliases that keep resolving after melds consume their operands.

        new H            create an empty heap named H
        insert H ID KEY  insert; ID becomes the element's name
        decrease ID KEY  lower the element's key
        deletemin H      pop the minimum, print "ID KEY"
        findmin H        print "ID KEY" without removing, or "none"
        meld H1 H2       merge; both names now reach the merged heap
        check H          full structural audit, print "ok"

    Blank lines and '#' comments are skipped.  Any violation of the
    trace language raises TraceError with the line number.
    """
    if out is None:
        out = sys.stdout
    pool = NodePool()
    heaps: dict = {}
    handles: dict = {}
    owners: dict = {}   # element id -> heap name at insert time; the
                        # name keeps resolving after melds re-alias it

    def heap_of(name, lineno):
        try:
            return heaps[name]
        except KeyError:
            raise TraceError(f"line {lineno}: unknown heap {name!r}") from None

    def parse_key(text, lineno):
        try:
            return int(text)
        except ValueError:
            raise TraceError(f"line {lineno}: bad key {text!r}") from None

    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        op, rest = fields[0], fields[1:]
        try:
            if op == "new" and len(rest) == 1:
                if rest[0] in heaps:
                    raise TraceError(f"line {lineno}: heap {rest[0]!r} exists")
                heaps[rest[0]] = pool.new_heap()
            elif op == "insert" and len(rest) == 3:
                name, ident, key = rest
                if ident in handles:
                    raise TraceError(f"line {lineno}: id {ident!r} reused")
                handles[ident] = heap_of(name, lineno).insert(
                    parse_key(key, lineno), ident)
                owners[ident] = name
            elif op == "decrease" and len(rest) == 2:
                ident, key = rest
                if ident not in handles:
                    raise TraceError(f"line {lineno}: unknown id {ident!r}")
                owner = heaps[owners[ident]]
                if not owner.is_live(handles[ident]):
                    raise TraceError(f"line {lineno}: id {ident!r} is dead")
                owner.decrease_key(handles[ident], parse_key(key, lineno))
            elif op == "deletemin" and len(rest) == 1:
                key, item = heap_of(rest[0], lineno).delete_min()
                print(f"{item} {key}", file=out)
            elif op == "findmin" and len(rest) == 1:
                got = heap_of(rest[0], lineno).find_min()
                print("none" if got is None else f"{got[1]} {got[0]}", file=out)
            elif op == "meld" and len(rest) == 2:
                a, b = heap_of(rest[0], lineno), heap_of(rest[1], lineno)
                if a is b:
                    raise TraceError(
                        f"line {lineno}: {rest[0]!r} and {rest[1]!r} are the same heap")
                merged = a.meld(b)
                for name, h in list(heaps.items()):
                    if h is a or h is b:
                        heaps[name] = merged
            elif op == "check" and len(rest) == 1:
                report = full_audit(heap_of(rest[0], lineno),
                                    check_root_multiplicity=False)
                if not report.ok:
                    raise TraceError(
                        f"line {lineno}: audit failed: {report.to_json()}")
                print("ok", file=out)
            else:
                raise TraceError(f"line {lineno}: bad trace line {line!r}")
        except HeapError as exc:
            raise TraceError(f"line {lineno}: {exc}") from None


def _cmd_check(args) -> int:
    try:
        if args.trace == "-":
            run_trace(sys.stdin)
        else:
            with open(args.trace) as fh:
                run_trace(fh)
    except TraceError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"cannot read trace: {exc}", file=sys.stderr)
        return 2
    return 0


def _cmd_bench(args) -> int:
    names = HEAP_NAMES if args.heap == "all" else (args.heap,)
    graph = None
    if args.workload == "dijkstra":
        graph = read_dimacs(args.dimacs) if args.dimacs \
            else gen_graph(args.n, args.m, args.seed)

    records = []
    for name in names:
        for seed in range(args.seed, args.seed + args.repeat):
            if args.workload == "heapsort":
                records.append(heapsort_bench(name, args.n, seed))
            elif args.workload == "mixed":
                records.append(mixed_bench(name, args.n, seed))
            else:
                g = graph if (args.dimacs or seed == args.seed) \
                    else gen_graph(args.n, args.m, seed)
                records.append(dijkstra_bench(name, g, seed))

    if args.format == "json":
        for r in records:
            print(json.dumps(vars(r)))
    else:
        print(CSV_HEADER)
        for r in records:
            print(r.csv_row())
        if args.workload == "dijkstra":
            for r in records:
                print(f"# checksum {r.heap} seed={r.seed} {r.checksum}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "fuzz":
            return _cmd_fuzz(args)
        if args.command == "check":
            return _cmd_check(args)
        return _cmd_bench(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
