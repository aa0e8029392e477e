"""Differential-testing oracle for the violation heap.

``NaivePQ`` is a deliberately dumb priority queue: a flat list of
(key, id) pairs scanned with ``min`` on every query.  It is slow and
obviously correct, which is the whole point.  ``gen_ops`` builds random
operation scripts whose alive keys are always pairwise distinct, so the
minimum element is unambiguous and both structures must delete the same
element; ``run_differential`` replays a script against the naive queue
and a violation heap side by side, comparing sizes, minimums, deleted
elements, and (at a configurable cadence) the full structural audit.
"""

from __future__ import annotations

import heapq
import json
import random
from dataclasses import dataclass, field
from typing import Optional

from .heap_core import EmptyHeapError, HeapError, NodePool
from .invariants import full_audit

# insert, delete_min, decrease_key, meld
DEFAULT_WEIGHTS = (0.45, 0.25, 0.25, 0.05)


class NaivePQ:
    """Reference priority queue: O(n) scans, no clever structure.

    Elements are named by dense integer ids in insertion order.  Ties on
    key are broken toward the smaller id, which matters only when a
    script contains duplicate alive keys (generated scripts never do).
    """

    def __init__(self):
        self._entries: list[tuple] = []   # (key, id), arbitrary order
        self._pos: dict[int, int] = {}    # id -> index into _entries
        self._items: list = []            # dense id -> payload
        self._key_count: dict = {}        # key -> live multiplicity

    def __len__(self) -> int:
        return len(self._entries)

    def insert(self, key, item=None) -> int:
        ident = len(self._items)
        self._items.append(item)
        self._pos[ident] = len(self._entries)
        self._entries.append((key, ident))
        self._key_count[key] = self._key_count.get(key, 0) + 1
        return ident

    def is_live(self, ident: int) -> bool:
        return ident in self._pos

    def key_of(self, ident: int):
        return self._entries[self._pos[ident]][0]

    def item_of(self, ident: int):
        return self._items[ident]

    def key_multiplicity(self, key) -> int:
        return self._key_count.get(key, 0)

    def find_min(self) -> Optional[tuple]:
        """(key, id) of the minimum, or None when empty."""
        if not self._entries:
            return None
        return min(self._entries)

    def delete_min(self) -> tuple:
        """Remove and return (key, item) of the minimum element."""
        if not self._entries:
            raise EmptyHeapError("empty")
        key, ident = min(self._entries)
        self._remove(ident)
        self._drop_key(key)
        return key, self._items[ident]

    def decrease_key(self, ident: int, new_key) -> None:
        pos = self._pos.get(ident)
        if pos is None:
            raise KeyError(ident)
        old_key = self._entries[pos][0]
        if new_key > old_key:
            raise ValueError("key increase not supported")
        self._entries[pos] = (new_key, ident)
        self._drop_key(old_key)
        self._key_count[new_key] = self._key_count.get(new_key, 0) + 1

    def _remove(self, ident: int) -> None:
        pos = self._pos.pop(ident)
        last = self._entries.pop()
        if pos < len(self._entries):
            self._entries[pos] = last
            self._pos[last[1]] = pos

    def _drop_key(self, key) -> None:
        c = self._key_count[key] - 1
        if c:
            self._key_count[key] = c
        else:
            del self._key_count[key]


@dataclass
class OpScript:
    """A replayable operation sequence.

    Ops are tuples: ("insert", key), ("deletemin",),
    ("decrease", id, new_key), ("meld", (key, ...)).  Ids number every
    insertion in script order, meld batches included.
    """

    seed: int
    ops: list = field(default_factory=list)
    weights: tuple = DEFAULT_WEIGHTS


def parse_weights(text: str) -> tuple:
    """Parse "a,b,c,d" into normalized insert/delete/decrease/meld weights."""
    parts = text.split(",")
    if len(parts) != 4:
        raise ValueError("expected four comma-separated weights")
    vals = tuple(float(p) for p in parts)
    if any(v < 0 for v in vals):
        raise ValueError("weights must be non-negative")
    total = sum(vals)
    if total <= 0:
        raise ValueError("weights must not all be zero")
    return tuple(v / total for v in vals)


def gen_ops(seed: int, n_ops: int, weights: tuple = DEFAULT_WEIGHTS,
            key_span: int = 10 ** 9, meld_batch_max: int = 4) -> OpScript:
    """Build a random script with pairwise-distinct alive keys.

    Distinct alive keys make the minimum unique, so a naive queue and
    the heap under test must always agree on which element delete_min
    removes.  Keys freed by deletion may be drawn again later.
    """
    rng = random.Random(seed)
    if len(weights) != 4 or any(x < 0 for x in weights) or sum(weights) <= 0:
        raise ValueError("weights must be four non-negative numbers")
    total = sum(weights)
    w = tuple(x / total for x in weights)
    c1 = w[0]
    c2 = c1 + w[1]
    c3 = c2 + w[2]

    alive_keys: set = set()
    alive: dict[int, int] = {}         # id -> current key
    order: list[int] = []              # alive ids, for uniform sampling
    order_pos: dict[int, int] = {}
    lazy: list[tuple] = []             # heapq of (key, id), stale entries allowed
    next_id = 0
    ops: list = []

    def fresh_key() -> int:
        while True:
            k = rng.randrange(-key_span, key_span)
            if k not in alive_keys:
                return k

    def model_insert(k: int) -> None:
        nonlocal next_id
        alive_keys.add(k)
        alive[next_id] = k
        order_pos[next_id] = len(order)
        order.append(next_id)
        heapq.heappush(lazy, (k, next_id))
        next_id += 1

    def model_remove(ident: int) -> None:
        alive_keys.discard(alive.pop(ident))
        pos = order_pos.pop(ident)
        last = order.pop()
        if pos < len(order):
            order[pos] = last
            order_pos[last] = pos

    for _ in range(n_ops):
        for _attempt in range(8):
            r = rng.random()
            kind = 0 if r < c1 else 1 if r < c2 else 2 if r < c3 else 3
            if kind in (1, 2) and not alive:
                continue
            break
        else:
            kind = 0

        if kind == 0:
            k = fresh_key()
            ops.append(("insert", k))
            model_insert(k)
        elif kind == 1:
            while True:
                k, ident = lazy[0]
                if alive.get(ident) == k:
                    break
                heapq.heappop(lazy)
            heapq.heappop(lazy)
            model_remove(ident)
            ops.append(("deletemin",))
        elif kind == 2:
            ident = order[rng.randrange(len(order))]
            cur = alive[ident]
            # mix local nudges with span-scale drops: nudges mostly stay
            # above the parent, drops force cuts and rank repairs
            hi = 1000 if rng.random() < 0.5 else key_span
            while True:
                nk = cur - rng.randrange(1, hi + 1)
                if nk not in alive_keys:
                    break
            alive_keys.discard(cur)
            alive_keys.add(nk)
            alive[ident] = nk
            heapq.heappush(lazy, (nk, ident))
            ops.append(("decrease", ident, nk))
        else:
            batch = []
            for _ in range(rng.randrange(1, meld_batch_max + 1)):
                k = fresh_key()
                batch.append(k)
                model_insert(k)
            ops.append(("meld", tuple(batch)))

    return OpScript(seed=seed, ops=ops, weights=tuple(w))


@dataclass
class Verdict:
    """Outcome of one differential run, plus run statistics."""

    seed: int
    op_count: int
    passed: bool
    fail_at: Optional[int] = None
    detail: str = ""
    inserts: int = 0
    deletes: int = 0
    decreases: int = 0
    melds: int = 0
    audits: int = 0
    multiplicity_audits: int = 0
    comparisons: int = 0
    joins: int = 0
    cuts: int = 0
    rank_update_steps: int = 0
    max_rank: int = 0

    def to_json(self) -> str:
        return json.dumps({
            "seed": self.seed,
            "ops": self.op_count,
            "verdict": "pass" if self.passed else "fail",
            "fail_at": self.fail_at,
            "detail": self.detail,
        })


def _resolve_cadence(audit_every: Optional[int], n_ops: int) -> int:
    """0 disables audits; None picks every op for short scripts and a
    sparse schedule for long ones."""
    if audit_every is None:
        return 1 if n_ops <= 2000 else max(1, n_ops // 25)
    return audit_every


def replay(script: OpScript, audit_every: Optional[int] = None) -> Verdict:
    """Run one script against NaivePQ and a fresh violation heap.

    Returns a failing Verdict on the first observable divergence,
    structural audit finding, or heap-side exception.  Scripts with
    duplicate alive keys must not decrease an id after an ambiguous
    deletion; generated scripts never contain duplicates.
    """
    cadence = _resolve_cadence(audit_every, len(script.ops))
    v = Verdict(seed=script.seed, op_count=len(script.ops), passed=False)

    pool = NodePool()
    heap = pool.new_heap()
    naive = NaivePQ()
    handles: list = []   # dense id -> NodeHandle

    def fill_stats() -> None:
        t = pool.telemetry
        v.comparisons = t.comparisons
        v.joins = t.joins
        v.cuts = t.cuts
        v.rank_update_steps = t.rank_update_steps
        v.max_rank = t.max_rank

    def fail(i: int, msg: str) -> Verdict:
        v.fail_at = i
        v.detail = msg
        fill_stats()
        return v

    for i, op in enumerate(script.ops):
        try:
            kind = op[0]
            was_delete = False
            if kind == "insert":
                naive.insert(op[1], len(handles))
                handles.append(heap.insert(op[1], len(handles)))
                v.inserts += 1
            elif kind == "deletemin":
                was_delete = True
                v.deletes += 1
                nk, nitem = naive.delete_min()
                unique = naive.key_multiplicity(nk) == 0
                hk, hitem = heap.delete_min()
                if hk != nk:
                    return fail(i, f"delete_min key {hk!r}, oracle removed {nk!r}")
                if unique and hitem != nitem:
                    return fail(i, f"delete_min item {hitem!r}, oracle removed {nitem!r}")
            elif kind == "decrease":
                _, ident, nk = op
                # heap first: a stale target then yields a failing
                # verdict instead of an oracle-side KeyError
                heap.decrease_key(handles[ident], nk)
                naive.decrease_key(ident, nk)
                v.decreases += 1
            else:
                side = pool.new_heap()
                for k in op[1]:
                    naive.insert(k, len(handles))
                    handles.append(side.insert(k, len(handles)))
                heap = heap.meld(side)
                v.melds += 1

            if len(heap) != len(naive):
                return fail(i, f"size {len(heap)} vs oracle {len(naive)}")

            if cadence and (i + 1) % cadence == 0:
                nm = naive.find_min()
                hm = heap.find_min()
                if nm is None:
                    if hm is not None:
                        return fail(i, f"find_min {hm!r} on empty oracle")
                else:
                    if hm is None:
                        return fail(i, "find_min empty, oracle is not")
                    if hm[0] != nm[0]:
                        return fail(i, f"find_min key {hm[0]!r}, oracle {nm[0]!r}")
                report = full_audit(heap, check_root_multiplicity=was_delete)
                v.audits += 1
                if was_delete:
                    v.multiplicity_audits += 1
                if not report.ok:
                    return fail(i, "audit: " + report.to_json())
        except (HeapError, AssertionError) as exc:
            return fail(i, f"{type(exc).__name__}: {exc}")

    if cadence:
        report = full_audit(heap)
        v.audits += 1
        if not report.ok:
            return fail(len(script.ops), "final audit: " + report.to_json())

    v.passed = True
    fill_stats()
    return v


def run_differential(seed: int, n_ops: int, weights: tuple = DEFAULT_WEIGHTS,
                     audit_every: Optional[int] = None,
                     key_span: int = 10 ** 9) -> Verdict:
    """Generate a script for this seed and replay it; see ``replay``."""
    script = gen_ops(seed, n_ops, weights, key_span=key_span)
    return replay(script, audit_every=audit_every)
