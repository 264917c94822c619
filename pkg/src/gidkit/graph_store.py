"""Shared edge storage for every engine.

Edges live in one arena as (src, dst, next) triples addressed by integer
handles.  An ``EdgeLists`` table keeps one singly linked list per key (a state
id) by head/tail handles, so append, pop-front and concatenation are O(1).
Edge records keep their original endpoints forever; callers canonicalise at
read time.
"""
from __future__ import annotations

from typing import Callable, Iterator

NIL = -1


class EdgeArena:
    __slots__ = ("src", "dst", "nxt", "writes")

    def __init__(self):
        self.src: list[int] = []
        self.dst: list[int] = []
        self.nxt: list[int] = []
        self.writes = 0  # link-field writes, for O(1) checks

    def new(self, u: int, v: int) -> int:
        self.src.append(u)
        self.dst.append(v)
        self.nxt.append(NIL)
        return len(self.nxt) - 1

    def __len__(self) -> int:
        return len(self.nxt)


class EdgeLists:
    """A family of concatenable edge lists indexed by small integer keys."""

    __slots__ = ("arena", "head", "tail")

    def __init__(self, arena: EdgeArena | None = None, size: int = 0):
        self.arena = arena if arena is not None else EdgeArena()
        self.head = [NIL] * size
        self.tail = [NIL] * size

    def grow(self, size: int) -> None:
        extra = size - len(self.head)
        if extra > 0:
            self.head.extend([NIL] * extra)
            self.tail.extend([NIL] * extra)

    def append(self, key: int, u: int, v: int) -> int:
        arena = self.arena
        node = arena.new(u, v)
        t = self.tail[key]
        if t == NIL:
            self.head[key] = node
        else:
            arena.nxt[t] = node
        self.tail[key] = node
        arena.writes += 2
        return node

    def append_node(self, key: int, node: int) -> None:
        """Relink an existing (detached) edge record onto the end of ``key``."""
        arena = self.arena
        arena.nxt[node] = NIL
        t = self.tail[key]
        if t == NIL:
            self.head[key] = node
        else:
            arena.nxt[t] = node
        self.tail[key] = node
        arena.writes += 3

    def pop(self, key: int) -> int:
        """Detach and return the first edge handle of ``key`` (NIL if empty)."""
        node = self.head[key]
        if node != NIL:
            nxt = self.arena.nxt[node]
            self.head[key] = nxt
            if nxt == NIL:
                self.tail[key] = NIL
            self.arena.writes += 1
        return node

    def concat(self, a: int, b: int, into: int) -> None:
        """List ``into`` becomes list ``a`` followed by list ``b``.

        ``into`` must be ``a`` or ``b``; the other key is left empty.
        """
        ha, ta, hb, tb = self.head[a], self.tail[a], self.head[b], self.tail[b]
        if ha == NIL:
            h, t = hb, tb
        elif hb == NIL:
            h, t = ha, ta
        else:
            self.arena.nxt[ta] = hb
            self.arena.writes += 1
            h, t = ha, tb
        other = b if into == a else a
        self.head[other] = self.tail[other] = NIL
        self.head[into], self.tail[into] = h, t
        self.arena.writes += 4

    def prune(self, key: int, drop: Callable[[int], bool]) -> int:
        """Unlink every edge of ``key`` for which ``drop(handle)`` holds.

        Returns the new head.  Meant for edges that have become permanently
        useless (self-loops after a merge, dead targets).
        """
        arena = self.arena
        nxt = arena.nxt
        prev, node = NIL, self.head[key]
        while node != NIL:
            after = nxt[node]
            if drop(node):
                if prev == NIL:
                    self.head[key] = after
                else:
                    nxt[prev] = after
                arena.writes += 1
            else:
                prev = node
            node = after
        self.tail[key] = prev
        return self.head[key]

    def clear(self, key: int) -> None:
        self.head[key] = self.tail[key] = NIL

    def is_empty(self, key: int) -> bool:
        return self.head[key] == NIL

    def nodes(self, key: int) -> Iterator[int]:
        nxt = self.arena.nxt
        node = self.head[key]
        while node != NIL:
            yield node
            node = nxt[node]

    def edges(self, key: int) -> Iterator[tuple[int, int]]:
        src, dst = self.arena.src, self.arena.dst
        for node in self.nodes(key):
            yield src[node], dst[node]

    def __len__(self) -> int:
        return len(self.head)


def dfs_reverse(
    start: int,
    bck: EdgeLists,
    visit: Callable[[int], bool],
    find: Callable[[int], int] | None = None,
    stats: list[int] | None = None,
) -> list[int]:
    """States reachable from ``start`` along backward edges, DFS preorder.

    Only states passing ``visit`` are entered (``start`` included).  Edge
    sources are mapped through ``find`` before the filter, so with a
    union-find this walks the condensed graph.  ``stats[0]`` accumulates the
    number of edges inspected.
    """
    if not visit(start):
        return []
    arena = bck.arena
    src, nxt = arena.src, arena.nxt
    head = bck.head
    seen = {start}
    order = [start]
    stack = [start]
    inspected = 0
    while stack:
        x = stack.pop()
        node = head[x]
        while node != NIL:
            inspected += 1
            u = src[node]
            if find is not None:
                u = find(u)
            if u not in seen:
                seen.add(u)
                if visit(u):
                    order.append(u)
                    stack.append(u)
            node = nxt[node]
    if stats is not None:
        stats[0] += inspected
    return order
