"""Reference heaps the benchmarks compare against.

Both expose the same surface as the violation heap: insert returns a
handle, delete_min returns (key, item), decrease_key takes the handle,
meld returns the surviving heap object, and a shared Telemetry records
comparisons and link work.  BinaryHeap pays O(log n) per decrease and
O(n log n) per meld; PairingHeap is the strong practical baseline with
cheap decrease and O(1) meld.
"""

from __future__ import annotations

import itertools
from typing import Optional

from .heap_core import EmptyHeapError, HeapError, StaleHandleError, Telemetry

# ids unique across instances so melded heaps never collide
_binary_ids = itertools.count()


class BinaryHeap:
    """Array-backed binary min-heap with an id-to-slot map.

    Handles are plain ints.  A deleted element's id goes stale and any
    later decrease_key on it raises StaleHandleError.
    """

    def __init__(self):
        self._arr: list[tuple] = []    # (key, id)
        self._pos: dict[int, int] = {}
        self._items: dict[int, object] = {}
        self.telemetry = Telemetry()

    def __len__(self) -> int:
        return len(self._arr)

    def is_empty(self) -> bool:
        return not self._arr

    def is_live(self, ident: int) -> bool:
        return ident in self._pos

    def insert(self, key, item=None) -> int:
        ident = next(_binary_ids)
        self._items[ident] = item
        self._arr.append((key, ident))
        self._pos[ident] = len(self._arr) - 1
        self._sift_up(len(self._arr) - 1)
        return ident

    def find_min(self) -> Optional[tuple]:
        if not self._arr:
            return None
        key, ident = self._arr[0]
        return key, self._items[ident]

    def delete_min(self) -> tuple:
        if not self._arr:
            raise EmptyHeapError("empty")
        key, ident = self._arr[0]
        item = self._items.pop(ident)
        del self._pos[ident]
        last = self._arr.pop()
        if self._arr:
            self._arr[0] = last
            self._pos[last[1]] = 0
            self._sift_down(0)
        return key, item

    def decrease_key(self, ident: int, new_key) -> None:
        pos = self._pos.get(ident)
        if pos is None:
            raise StaleHandleError(f"stale id {ident}")
        key, _ = self._arr[pos]
        if new_key > key:
            raise HeapError("key increase not supported")
        self._arr[pos] = (new_key, ident)
        self._sift_up(pos)

    def meld(self, other: "BinaryHeap") -> "BinaryHeap":
        """Absorb the other heap's elements; the other heap empties."""
        if other is self:
            raise HeapError("cannot meld a heap with itself")
        for key, ident in other._arr:
            self._arr.append((key, ident))
            self._pos[ident] = len(self._arr) - 1
            self._items[ident] = other._items[ident]
            self._sift_up(len(self._arr) - 1)
        other._arr.clear()
        other._pos.clear()
        other._items.clear()
        return self

    def _sift_up(self, i: int) -> None:
        arr = self._arr
        pos = self._pos
        t = self.telemetry
        entry = arr[i]
        while i > 0:
            parent = (i - 1) >> 1
            t.comparisons += 1
            if arr[parent][0] <= entry[0]:
                break
            arr[i] = arr[parent]
            pos[arr[i][1]] = i
            i = parent
        arr[i] = entry
        pos[entry[1]] = i

    def _sift_down(self, i: int) -> None:
        arr = self._arr
        pos = self._pos
        t = self.telemetry
        n = len(arr)
        entry = arr[i]
        while True:
            left = 2 * i + 1
            if left >= n:
                break
            child = left
            right = left + 1
            if right < n:
                t.comparisons += 1
                if arr[right][0] < arr[left][0]:
                    child = right
            t.comparisons += 1
            if entry[0] <= arr[child][0]:
                break
            arr[i] = arr[child]
            pos[arr[i][1]] = i
            i = child
        arr[i] = entry
        pos[entry[1]] = i


class _PNode:
    __slots__ = ("key", "item", "child", "sibling", "prev", "alive")

    def __init__(self, key, item):
        self.key = key
        self.item = item
        self.child = None
        self.sibling = None
        self.prev = None     # parent when first child, else left sibling
        self.alive = True


class PairingHeap:
    """Two-pass pairing heap.  Handles are the node objects themselves.

    Telemetry counts every pairwise link under ``joins`` and every
    decrease-triggered detach under ``cuts``.
    """

    def __init__(self):
        self._root: Optional[_PNode] = None
        self._count = 0
        self.telemetry = Telemetry()

    def __len__(self) -> int:
        return self._count

    def is_empty(self) -> bool:
        return self._root is None

    def is_live(self, node: _PNode) -> bool:
        return node.alive

    def insert(self, key, item=None) -> _PNode:
        node = _PNode(key, item)
        self._root = node if self._root is None else self._link(self._root, node)
        self._count += 1
        return node

    def find_min(self) -> Optional[tuple]:
        if self._root is None:
            return None
        return self._root.key, self._root.item

    def delete_min(self) -> tuple:
        root = self._root
        if root is None:
            raise EmptyHeapError("empty")
        root.alive = False
        self._count -= 1
        first = root.child
        if first is not None:
            first.prev = None
        self._root = self._combine(first)
        return root.key, root.item

    def decrease_key(self, node: _PNode, new_key) -> None:
        if not node.alive:
            raise StaleHandleError("stale pairing-heap handle")
        if new_key > node.key:
            raise HeapError("key increase not supported")
        node.key = new_key
        if node is self._root:
            return
        self.telemetry.cuts += 1
        prev = node.prev
        if prev.child is node:
            prev.child = node.sibling
        else:
            prev.sibling = node.sibling
        if node.sibling is not None:
            node.sibling.prev = prev
        node.prev = node.sibling = None
        self._root = self._link(self._root, node)

    def meld(self, other: "PairingHeap") -> "PairingHeap":
        """Absorb the other heap's elements; the other heap empties."""
        if other is self:
            raise HeapError("cannot meld a heap with itself")
        if other._root is not None:
            self._root = other._root if self._root is None \
                else self._link(self._root, other._root)
            self._count += other._count
        other._root = None
        other._count = 0
        return self

    def _link(self, a: _PNode, b: _PNode) -> _PNode:
        t = self.telemetry
        t.comparisons += 1
        t.joins += 1
        if b.key < a.key:
            a, b = b, a
        b.prev = a
        b.sibling = a.child
        if a.child is not None:
            a.child.prev = b
        a.child = b
        return a

    def _combine(self, first: Optional[_PNode]) -> Optional[_PNode]:
        if first is None:
            return None
        # pass one pairs siblings left to right, pass two folds right to left
        pairs = []
        cur = first
        while cur is not None:
            a = cur
            b = a.sibling
            nxt = b.sibling if b is not None else None
            a.sibling = a.prev = None
            if b is None:
                pairs.append(a)
            else:
                b.sibling = b.prev = None
                pairs.append(self._link(a, b))
            cur = nxt
        root = pairs[-1]
        for tree in reversed(pairs[:-1]):
            root = self._link(tree, root)
        root.prev = None
        return root
