"""Union-find over dense integer ids with O(1) class splicing and iteration."""
from __future__ import annotations

import random
from typing import Iterator


class UnionFind:
    """Union by rank with path halving.

    Every class is also threaded on a circular successor ring (``ring``) so
    ``iter`` visits exactly the members of a class.  Rank ties go to the first
    argument of ``union`` unless a ``tie_rng`` is given, in which case they
    are decided by coin flip; callers must not care which member wins.
    """

    __slots__ = ("parent", "rank", "ring", "finds", "hops", "unions", "_rng")

    def __init__(self, size: int = 0, tie_rng: random.Random | None = None):
        self.parent = list(range(size))
        self.rank = [0] * size
        self.ring = list(range(size))
        self.finds = 0
        self.hops = 0
        self.unions = 0
        self._rng = tie_rng

    def __len__(self) -> int:
        return len(self.parent)

    def add(self) -> int:
        v = len(self.parent)
        self.parent.append(v)
        self.rank.append(0)
        self.ring.append(v)
        return v

    def grow(self, size: int) -> None:
        while len(self.parent) < size:
            self.add()

    def find(self, v: int) -> int:
        parent = self.parent
        self.finds += 1
        p = parent[v]
        while p != v:
            gp = parent[p]
            parent[v] = gp
            self.hops += 1
            v = gp
            p = parent[v]
        return v

    def union(self, a: int, b: int) -> int:
        a = self.find(a)
        b = self.find(b)
        if a == b:
            return a
        rank = self.rank
        ra, rb = rank[a], rank[b]
        if ra < rb:
            a, b = b, a
        elif ra == rb:
            if self._rng is not None and self._rng.random() < 0.5:
                a, b = b, a
            rank[a] += 1
        self.parent[b] = a
        ring = self.ring
        ring[a], ring[b] = ring[b], ring[a]
        self.unions += 1
        return a

    def same(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)

    def iter(self, v: int) -> Iterator[int]:
        ring = self.ring
        yield v
        w = ring[v]
        while w != v:
            yield w
            w = ring[w]

    def members(self, v: int) -> list[int]:
        return list(self.iter(v))

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for v in range(len(self.parent)):
            out.setdefault(self.find(v), []).append(v)
        return out
