"""
Binary min-heap with an index from item to slot, so priorities can be
changed or entries removed in O(log n).
"""

import heapq
from typing import Any, Dict, Hashable, Iterator, List, Tuple


class IndexedHeap:
    """
    A heap with indices.

    Items are unique; pushing an existing item updates its priority.
    Priorities must be mutually comparable (tuples are typical).
    """

    __slots__ = ("heap", "index")

    def __init__(self):
        self.heap: List[Tuple[Any, Hashable]] = []
        self.index: Dict[Hashable, int] = {}

    def push(self, item: Hashable, priority: Any) -> None:
        if item in self.index:
            self.set_priority(item, priority)
            return
        self.heap.append((priority, item))
        self.index[item] = len(self.heap) - 1
        self._siftup(len(self.heap) - 1)

    def pop(self) -> Hashable:
        if not self.heap:
            raise IndexError("pop from an empty heap")
        top = self.heap[0][1]
        self.remove(top)
        return top

    def remove(self, item: Hashable) -> None:
        pos = self.index.pop(item)
        last = self.heap.pop()
        if pos == len(self.heap):
            return
        removed = self.heap[pos]
        self.heap[pos] = last
        self.index[last[1]] = pos
        if last[0] > removed[0]:
            self._siftdown(pos)
        else:
            self._siftup(pos)

    def set_priority(self, item: Hashable, priority: Any) -> None:
        pos = self.index[item]
        old = self.heap[pos][0]
        self.heap[pos] = (priority, item)
        if old < priority:
            self._siftdown(pos)
        else:
            self._siftup(pos)

    def priority(self, item: Hashable) -> Any:
        return self.heap[self.index[item]][0]

    def top(self) -> Hashable:
        if not self.heap:
            raise IndexError("top of an empty heap")
        return self.heap[0][1]

    def top_priority(self) -> Any:
        if not self.heap:
            raise IndexError("top of an empty heap")
        return self.heap[0][0]

    def items(self) -> Iterator[Hashable]:
        return iter(self.index)

    def ordered(self) -> Iterator[Tuple[Any, Hashable]]:
        """
        Yield (priority, item) pairs in priority order without changing the heap.

        Walks the heap array best-first, so stopping early costs only the
        entries already yielded.
        """
        if not self.heap:
            return
        frontier = [(self.heap[0][0], 0)]
        size = len(self.heap)
        while frontier:
            priority, pos = heapq.heappop(frontier)
            yield priority, self.heap[pos][1]
            for child in (2 * pos + 1, 2 * pos + 2):
                if child < size:
                    heapq.heappush(frontier, (self.heap[child][0], child))

    def clone(self) -> "IndexedHeap":
        other = IndexedHeap()
        other.heap = list(self.heap)
        other.index = dict(self.index)
        return other

    def _siftup(self, pos: int) -> None:
        temp = self.heap[pos]
        while pos > 0:
            pindex = (pos - 1) // 2
            pt = self.heap[pindex]
            if pt[0] > temp[0]:
                self.heap[pos] = pt
                self.index[pt[1]] = pos
            else:
                break
            pos = pindex
        self.heap[pos] = temp
        self.index[temp[1]] = pos

    def _siftdown(self, pos: int) -> None:
        temp = self.heap[pos]
        size = len(self.heap)
        while pos * 2 + 1 < size:
            cindex = pos * 2 + 1
            pt = self.heap[cindex]
            if cindex + 1 < size and self.heap[cindex + 1][0] < pt[0]:
                cindex += 1
                pt = self.heap[cindex]
            if pt[0] < temp[0]:
                self.heap[pos] = pt
                self.index[pt[1]] = pos
            else:
                break
            pos = cindex
        self.heap[pos] = temp
        self.index[temp[1]] = pos

    def __len__(self) -> int:
        return len(self.index)

    def __bool__(self) -> bool:
        return bool(self.index)

    def __contains__(self, item: Hashable) -> bool:
        return item in self.index
