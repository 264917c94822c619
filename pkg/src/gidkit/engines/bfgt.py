"""Incremental SCC maintenance with a two-way bounded search (sparse BFGT).

Each live-or-undecided class carries a key (level, position).  Every released
condensed edge between such classes goes from a smaller key to a larger one.
Inserting x -> y with key(x) >= key(y) searches backward from x among states
on x's level, giving up after ceil(sqrt(m)) arcs, then forward from y raising
the level of every state that now sits too low.  Finding x (or anything the
backward search saw) on the way forward means the new edge closed a cycle.

Positions within a level are integers.  Fresh states are appended at the back
of level 1; states moved by a search are placed at the front of their level,
the backward-visited ones first and the raised ones after them in
topological order.
"""
from __future__ import annotations

import math

import numpy as np

from ..graph_store import NIL, EdgeLists
from .audit import canon_array
from .simple import CondensationEngine


class BFGTEngine(CondensationEngine):
    name = "bfgt"

    def __init__(self, audit: bool = False):
        super().__init__(audit)
        self.rin = EdgeLists(self.out.arena)  # released in-edges per class
        self.level: list[int] = []
        self.pos: list[int] = []
        self._back = 1  # next position at the back of a level
        self._front = 0  # next position at the front of a level
        self._released = 0

    def _new_state(self, d: int) -> None:
        super()._new_state(d)
        self.rin.grow(d + 1)
        self.level.append(1)
        self.pos.append(self._back)
        self._back += 1

    def _concat_lists(self, a: int, b: int, z: int) -> None:
        super()._concat_lists(a, b, z)
        self.rin.concat(a, b, z)

    def _release(self, x: int, y: int, u: int, v: int) -> None:
        self.out.append(x, u, v)
        self.rin.append(y, u, v)
        self._released += 1
        self._insert(x, y)

    def _adopt(self, x: int, node: int) -> None:
        super()._adopt(x, node)
        arena = self.out.arena
        self.rin.append(arena.dst[node], arena.src[node], arena.dst[node])
        self._released += 1

    def _unpark(self, v: int) -> list[int]:
        sources = super()._unpark(v)
        if sources:
            # v is a sink so far: the back of the highest source level keeps
            # every adopted edge ordered
            self.level[v] = max(self.level[x] for x in sources)
            self.pos[v] = self._back
            self._back += 1
        return sources

    def _key_lt(self, a: int, b: int) -> bool:
        la, lb = self.level[a], self.level[b]
        return la < lb or (la == lb and self.pos[a] < self.pos[b])

    def _insert(self, x: int, y: int) -> None:
        if self._key_lt(x, y):
            return
        find, dead, live, level = self.uf.find, self.dead, self.live, self.level
        budget = math.isqrt(self._released - 1) + 1 if self._released > 1 else 1
        # backward search from x on x's level
        lx = level[x]
        rin_head, nxt, src = self.rin.head, self.rin.arena.nxt, self.rin.arena.src
        B = [x]
        in_b = {x}
        stack = [x]
        arcs = 0
        complete = True
        rin = self.rin
        while stack and complete:
            c = stack.pop()
            prev, node = NIL, rin_head[c]
            while node != NIL:
                if arcs >= budget:
                    complete = False
                    break
                arcs += 1
                s = find(src[node])
                after = nxt[node]
                if s == c:
                    # in-edge from inside the class, useless from now on
                    if prev == NIL:
                        rin_head[c] = after
                    else:
                        nxt[prev] = after
                    if after == NIL:
                        rin.tail[c] = prev
                    node = after
                    continue
                prev, node = node, after
                if s in in_b or dead[s] or live[s] or level[s] != lx:
                    continue
                if s == y:
                    self.stats.back_visits += arcs
                    self._collapse(x, y, [])
                    return
                in_b.add(s)
                B.append(s)
                stack.append(s)
        self.stats.back_visits += arcs
        if complete:
            if level[y] == lx:
                self._to_front(sorted(B, key=self.pos.__getitem__), [])
                return
            target = lx
        else:
            target = lx + 1
            B, in_b = [x], {x}
        # forward search from y raising states below the target level
        onxt, dst = self.out.arena.nxt, self.out.arena.dst
        pruned = self._pruned_out
        level[y] = target
        raised = [y]
        post = []
        fstack = [(y, pruned(y))]
        visits = 0
        while fstack:
            c, node = fstack[-1]
            if node == NIL:
                fstack.pop()
                post.append(c)
                continue
            fstack[-1] = (c, onxt[node])
            visits += 1
            t = find(dst[node])
            if t == c or dead[t]:
                continue
            if t in in_b:
                self._dfs_count[0] += visits
                self._collapse(x, y, raised)
                return
            if level[t] < target:
                level[t] = target
                raised.append(t)
                fstack.append((t, pruned(t)))
        self._dfs_count[0] += visits
        post.reverse()
        if complete:
            self._to_front(sorted(B, key=self.pos.__getitem__), post)
        else:
            self._to_front([], post)

    def _to_front(self, first: list[int], then: list[int]) -> None:
        pos = self.pos
        f = self._front
        for c in reversed(then):
            pos[c] = f
            f -= 1
        for c in reversed(first):
            pos[c] = f
            f -= 1
        self._front = f

    def _collapse(self, x: int, y: int, raised: list[int]) -> None:
        """The edge x -> y closed a cycle: merge it and repair the order."""
        find, dead, level, pos = self.uf.find, self.dead, self.level, self.pos
        for c in raised:
            pos[c] = self._back
            self._back += 1
        # states on some path y ~> x: forward from y, then backward from x
        # inside that region; every such state has level <= level of a raised
        # state or of x
        cap = max(level[x], level[y])
        onxt, dst = self.out.arena.nxt, self.out.arena.dst
        region = {y}
        stack = [y]
        while stack:
            c = stack.pop()
            node = self._pruned_out(c)
            while node != NIL:
                t = find(dst[node])
                node = onxt[node]
                if t not in region and not dead[t] and level[t] <= cap:
                    region.add(t)
                    stack.append(t)
        rnxt, src = self.rin.arena.nxt, self.rin.arena.src
        cycle = {x}
        stack = [x]
        while stack:
            c = stack.pop()
            node = self.rin.prune(c, lambda e: find(src[e]) == c)
            while node != NIL:
                s = find(src[node])
                node = rnxt[node]
                if s in region and s not in cycle:
                    cycle.add(s)
                    stack.append(s)
        top = max(cycle, key=lambda c: (level[c], pos[c]))
        key = (level[top], pos[top])
        z = self._merge_all(sorted(cycle))
        level[z], pos[z] = key
        self._repair([z] + [find(c) for c in raised])

    def _repair(self, seeds: list[int]) -> None:
        """Push every violated successor behind its source, transitively."""
        find, dead, level, pos = self.uf.find, self.dead, self.level, self.pos
        onxt, dst = self.out.arena.nxt, self.out.arena.dst
        stack = list(dict.fromkeys(seeds))
        while stack:
            a = stack.pop()
            node = self._pruned_out(a)
            while node != NIL:
                t = find(dst[node])
                node = onxt[node]
                if t == a or dead[t]:
                    continue
                if not self._key_lt(a, t):
                    level[t] = level[a]
                    pos[t] = self._back
                    self._back += 1
                    stack.append(t)

    def audit_problems(self) -> list[str]:
        problems = super().audit_problems()
        canon = canon_array(self.uf)
        U, V = self._all_edges.arrays()
        closed = np.asarray(self._is_closed, dtype=bool)
        live = np.asarray(self.live, dtype=bool)
        dead = np.asarray(self.dead, dtype=bool)
        level = np.asarray(self.level, dtype=np.int64)
        pos = np.asarray(self.pos, dtype=np.int64)
        X, Y = canon[U], canon[V]
        check = closed[U] & closed[V] & (X != Y) & ~live[X] & ~dead[X] & ~dead[Y]
        lx, ly = level[X], level[Y]
        ordered = (lx < ly) | ((lx == ly) & (pos[X] < pos[Y]))
        for i in np.flatnonzero(check & ~ordered)[:5]:
            x, y = X[i], Y[i]
            problems.append(
                f"edge ({self._ext[U[i]]}, {self._ext[V[i]]}) breaks the order: "
                f"{(level[x], pos[x])} >= {(level[y], pos[y])}"
            )
        return problems
