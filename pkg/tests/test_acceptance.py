"""Acceptance suite: one test per shipping criterion, each printing a
single PASS/FAIL line with its measurements.

Runtime expectations ("under N seconds") are reported alongside the
measured wall time but are not asserted: they describe the reference
machine, not a property of the data structure.  Correctness tolerances
are asserted exactly as stated.
"""

import math
import time

import pytest

from violationheap import NodePool, StaleHandleError
from violationheap.invariants import JoinNeutralityMonitor, full_audit
from violationheap.oracle import run_differential
from violationheap.workloads import dijkstra, gen_graph, heapsort_bench, make_heap

MIXED_SEEDS = 200
MIXED_OPS = 10_000
MIXED_WEIGHTS = (0.45, 0.25, 0.25, 0.05)

AUDITED_SEEDS = 50
AUDITED_OPS = 2_000
# heavier delete share than the mixed profile: every delete_min is
# followed by a root-multiplicity audit, so more deletes buy more
# coverage for the post-consolidation guarantee
AUDITED_WEIGHTS = (0.35, 0.35, 0.25, 0.05)


def report(criterion: int, ok: bool, detail: str) -> None:
    print(f"\n[criterion {criterion}] {'PASS' if ok else 'FAIL'} - {detail}")


@pytest.fixture(scope="session")
def mixed_fuzz():
    """Criterion 1's 200 x 10k differential runs, shared with criterion 8."""
    t0 = time.perf_counter()
    verdicts = []
    for seed in range(MIXED_SEEDS):
        verdicts.append(run_differential(seed, MIXED_OPS,
                                         weights=MIXED_WEIGHTS))
    return verdicts, time.perf_counter() - t0


@pytest.fixture(scope="session")
def audited_fuzz():
    """Criterion 2's audit-every-op runs, shared with criterion 6."""
    t0 = time.perf_counter()
    verdicts = []
    for seed in range(1000, 1000 + AUDITED_SEEDS):
        verdicts.append(run_differential(seed, AUDITED_OPS,
                                         weights=AUDITED_WEIGHTS,
                                         audit_every=1))
    return verdicts, time.perf_counter() - t0


def test_criterion_1_differential_correctness(mixed_fuzz):
    verdicts, wall = mixed_fuzz
    failures = [v for v in verdicts if not v.passed]
    ok = not failures
    detail = (f"{len(verdicts) - len(failures)}/{MIXED_SEEDS} seeds passed, "
              f"{MIXED_OPS} ops each, weights {MIXED_WEIGHTS}, "
              f"{wall:.1f}s (expected < 120s)")
    if failures:
        f = failures[0]
        detail += f"; first failure seed {f.seed} at op {f.fail_at}: {f.detail}"
    report(1, ok, detail)
    assert ok, detail


def test_criterion_2_invariants_every_op(audited_fuzz):
    verdicts, wall = audited_fuzz
    failures = [v for v in verdicts if not v.passed]
    audits = sum(v.audits for v in verdicts)
    ok = not failures and audits >= AUDITED_SEEDS * AUDITED_OPS
    detail = (f"{len(verdicts) - len(failures)}/{AUDITED_SEEDS} seeds clean, "
              f"{audits} audits covering structure/heap-order/first-root/"
              f"rank-bound/size-bound, {wall:.1f}s (expected < 60s)")
    if failures:
        f = failures[0]
        detail += f"; first failure seed {f.seed} at op {f.fail_at}: {f.detail}"
    report(2, ok, detail)
    assert ok, detail


def test_criterion_3_join_neutrality_100k():
    # churn a small pool so the per-join pool scan stays cheap; keep
    # cutting so joins also hit trees that already carry degree excess
    target = 100_000
    pool = NodePool()
    heap = pool.new_heap()
    monitor = JoinNeutralityMonitor(pool).install()
    import random
    rng = random.Random(12345)
    handles = []
    t0 = time.perf_counter()
    nid = 0
    while monitor.joins < target:
        while len(heap) < 96:
            handles.append(heap.insert(rng.randrange(1 << 40), nid))
            nid += 1
        for _ in range(24):
            heap.delete_min()
            hd = handles[rng.randrange(len(handles))]
            if heap.is_live(hd):
                heap.decrease_key(hd, pool.key_of(hd) - rng.randrange(1 << 39))
        if rng.random() < 0.05:     # occasional full drain
            while len(heap):
                heap.delete_min()
            handles.clear()
    monitor.remove()
    wall = time.perf_counter() - t0
    ok = monitor.joins >= target and not monitor.mismatches
    detail = (f"{monitor.joins} instrumented joins, "
              f"{len(monitor.mismatches)} degree-excess mismatches "
              f"(exact integer equality), {wall:.1f}s")
    if monitor.mismatches:
        detail += f"; first mismatch {monitor.mismatches[0]}"
    report(3, ok, detail)
    assert ok, detail


def test_criterion_4_unit_step_repairs(mixed_fuzz, audited_fuzz):
    # the repair walk asserts old_rank - new_rank == 1 on every mutation;
    # any larger step raises and surfaces as a failing verdict in the
    # fuzz runs, so passing runs prove zero exceptions.  Require the
    # walk to have actually fired so the claim is not vacuous.
    assert __debug__, "acceptance must run with asserts armed"
    mixed, _ = mixed_fuzz
    audited, _ = audited_fuzz
    steps = sum(v.rank_update_steps for v in mixed + audited)
    exceptions = [v for v in mixed + audited
                  if not v.passed and "rank repair" in v.detail]
    ok = steps > 0 and not exceptions
    detail = (f"{steps} rank-repair steps across {len(mixed) + len(audited)} "
              f"fuzz runs, each asserted to move the stored rank by "
              f"exactly 1; {len(exceptions)} assertion failures")
    report(4, ok, detail)
    assert ok, detail


def test_criterion_5_rank_bound_at_scale():
    n = 10 ** 6
    bound = 1.45 * math.log2(n) + 5
    rec = heapsort_bench("violation", n, seed=7)
    ok = rec.max_rank <= bound
    detail = (f"heapsort n=10^6: max rank {rec.max_rank} <= {bound:.1f}, "
              f"{rec.wall_ns / 1e9:.1f}s (expected order of seconds)")
    report(5, ok, detail)
    assert ok, detail


def test_criterion_6_post_consolidation_multiplicity(audited_fuzz):
    verdicts, _ = audited_fuzz
    # every audit scheduled right after a delete_min also enforced the
    # at-most-two-roots-per-rank rule; those audits all came back clean
    # or criterion 2 would already be red
    mult_audits = sum(v.multiplicity_audits for v in verdicts)
    clean = all(v.passed for v in verdicts)
    ok = clean and mult_audits > 0
    detail = (f"{mult_audits} post-delete-min audits enforced "
              f"no-three-roots-per-rank, all clean")
    report(6, ok, detail)
    assert ok, detail


def test_criterion_7_dijkstra_equivalence():
    graphs = 50
    n, m = 10 ** 4, 10 ** 5
    t0 = time.perf_counter()
    mismatches = []
    for seed in range(1, graphs + 1):
        g = gen_graph(n, m, seed)
        dv = dijkstra(g, 0, make_heap("violation"))
        db = dijkstra(g, 0, make_heap("binary"))
        if dv != db:
            bad = next(i for i in range(n) if dv[i] != db[i])
            mismatches.append((seed, bad, dv[bad], db[bad]))
            break
    wall = time.perf_counter() - t0
    ok = not mismatches
    detail = (f"{graphs} graphs (n=10^4, m=10^5, seeds 1-50) elementwise "
              f"equal against the binary heap, {wall:.1f}s (expected < 60s)")
    if mismatches:
        s, i, a, b = mismatches[0]
        detail = f"seed {s} vertex {i}: violation {a} vs binary {b}; " + detail
    report(7, ok, detail)
    assert ok, detail


def test_criterion_8_amortized_cost_sanity(mixed_fuzz):
    verdicts, _ = mixed_fuzz
    steps = sum(v.rank_update_steps for v in verdicts)
    decreases = sum(v.decreases for v in verdicts)
    joins = sum(v.joins for v in verdicts)
    deletes = sum(v.deletes for v in verdicts)
    max_rank = max(v.max_rank for v in verdicts)
    ratio = steps / decreases
    joins_per_delete = joins / deletes
    ok = ratio <= 10.0
    detail = (f"rank-update steps / decrease-key = {steps}/{decreases} = "
              f"{ratio:.4f} <= 10 (enforced); joins per delete-min = "
              f"{joins_per_delete:.2f} vs 3*max_rank = {3 * max_rank} "
              f"(reported)")
    report(8, ok, detail)
    assert ok, detail


def test_criterion_9_handle_safety():
    pool = NodePool()
    heap = pool.new_heap()
    handles = [heap.insert(k, f"item{k}") for k in range(20)]
    retired = []
    for _ in range(8):
        key, item = heap.delete_min()
        retired.append(handles[int(item[4:])])

    attempts = 0
    errors = 0
    for h in retired:
        for op in (lambda h=h: heap.decrease_key(h, -1),
                   lambda h=h: heap.decrease_key_by(h, 1),
                   lambda h=h: pool.key_of(h),
                   lambda h=h: pool.item_of(h),
                   lambda h=h: pool.rank_of(h)):
            attempts += 1
            try:
                op()
            except StaleHandleError:
                errors += 1

    # slots get recycled: new elements take retired slots, and the old
    # handles must still be rejected by their stamp
    fresh = [heap.insert(100 + k) for k in range(8)]
    for h in retired:
        attempts += 1
        try:
            heap.decrease_key(h, -99)
        except StaleHandleError:
            errors += 1

    rep = full_audit(heap, check_root_multiplicity=False)
    drained = [heap.delete_min()[0] for _ in range(len(heap))]
    ok = errors == attempts and rep.ok and drained == sorted(drained)
    detail = (f"{errors}/{attempts} operations on retired handles raised, "
              f"audit after: {'clean' if rep.ok else rep.to_json()}")
    report(9, ok, detail)
    assert ok, detail
