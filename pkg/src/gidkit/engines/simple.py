"""Condensation engines: outgoing edges are withheld until their source closes.

Because only closed states contribute outgoing edges, every cycle found in
the released graph consists of closed states and can be collapsed into one
union-find class for good.  Live marking does not need the condensation and
walks ``bck`` (every edge, released or not) right away.

An open state has no released out-edges, so it cannot lie on a cycle.  A
released edge whose target is still open is therefore parked on the target
and only joins the condensation when the target closes; the source keeps a
count of its parked edges so it is not declared dead early.

``SimpleEngine`` looks for the cycle closed by a released edge (x, y) with a
forward search from y.  Subclasses replace ``_insert`` and ``_unpark``.
"""
from __future__ import annotations

import numpy as np

from ..core import DEAD, LIVE, Edge
from ..graph_store import NIL, EdgeArena, EdgeLists, dfs_reverse
from ..union_find import UnionFind
from .audit import EdgeLog, canon_array, expected_status, scc_ids
from .base import DEAD_, LIVE_, OPEN, UNKNOWN, Engine


class CondensationEngine(Engine):
    name = "condensation"

    def __init__(self, audit: bool = False):
        super().__init__(audit)
        self.uf = UnionFind()
        arena = EdgeArena()
        self.out = EdgeLists(arena)  # released out-edges per class
        self.bck = EdgeLists(arena)  # every in-edge per class
        self.park = EdgeLists(arena)  # released edges into a still-open state
        self.parked: list[int] = []  # parked out-edges per class
        # set when a class may hold self-loops or dead targets in ``out``
        self.dirty: list[bool] = []
        self.pending: list[list[int]] = []
        self.live: list[bool] = []
        self.dead: list[bool] = []
        self._dfs_count = [0]
        self._all_edges = EdgeLog() if audit else None
        self._terminals: set[int] = set()

    def _new_state(self, d: int) -> None:
        self.uf.add()
        self.out.grow(d + 1)
        self.bck.grow(d + 1)
        self.park.grow(d + 1)
        self.parked.append(0)
        self.dirty.append(False)
        self.pending.append([])
        self.live.append(False)
        self.dead.append(False)

    def _status(self, d: int) -> int:
        x = self.uf.find(d)
        if self.live[x]:
            return LIVE_
        if self.dead[x]:
            return DEAD_
        return UNKNOWN if self._is_closed[d] else OPEN

    def _edge(self, u: int, v: int) -> None:
        if self._all_edges is not None:
            self._all_edges.append(u, v)
        find = self.uf.find
        x = find(u)
        if self.live[x]:
            return
        y = find(v)
        if self.live[y]:
            self._mark_live(x)
            return
        self.bck.append(y, u, v)
        self.pending[u].append(v)

    def _terminal(self, v: int) -> None:
        if self.audit:
            self._terminals.add(v)
        x = self.uf.find(v)
        if not self.live[x]:
            self._mark_live(x)

    def _mark_live(self, y: int) -> None:
        live = self.live
        order = dfs_reverse(y, self.bck, lambda x: not live[x], self.uf.find, self._dfs_count)
        out = self._out
        for x in order:
            live[x] = True
            for s in self.uf.iter(x):
                out.append((s, LIVE))

    def _close(self, u: int) -> None:
        find = self.uf.find
        if self.live[find(u)]:
            self.pending[u] = []
            self.park.clear(u)
            return
        self._unpark(u)
        targets, self.pending[u] = self.pending[u], []
        closed = self._is_closed
        for v in targets:
            x, y = find(u), find(v)
            if x == y or self.dead[y]:
                continue
            if not closed[v]:
                self.park.append(v, u, v)
                self.parked[x] += 1
                continue
            self._release(x, y, u, v)
        self._dead_sweep(find(u))

    def _release(self, x: int, y: int, u: int, v: int) -> None:
        self.out.append(x, u, v)
        self._insert(x, y)

    def _unpark(self, v: int) -> list[int]:
        """Move the edges parked on ``v`` into their sources' out-lists.

        ``v`` has no out-edges yet, so none of them closes a cycle.
        Returns the source classes.
        """
        find, live, parked = self.uf.find, self.live, self.parked
        park, src = self.park, self.park.arena.src
        sources = []
        node = park.pop(v)
        while node != NIL:
            x = find(src[node])
            parked[x] -= 1
            if not live[x]:
                self._adopt(x, node)
                sources.append(x)
            node = park.pop(v)
        return sources

    def _adopt(self, x: int, node: int) -> None:
        self.out.append_node(x, node)

    def _insert(self, x: int, y: int) -> None:
        """Record the released condensed edge x -> y, merging any cycle."""
        raise NotImplementedError

    def _pruned_out(self, c: int) -> int:
        """Head of c's out-list after dropping self-loops and dead targets."""
        if not self.dirty[c]:
            return self.out.head[c]
        self.dirty[c] = False
        find, dead, dst = self.uf.find, self.dead, self.out.arena.dst

        def useless(node):
            t = find(dst[node])
            return t == c or dead[t]

        return self.out.prune(c, useless)

    def _merge_all(self, members) -> int:
        it = iter(members)
        z = next(it)
        for c in it:
            if self.uf.find(c) == z:
                continue
            a = z
            z = self.uf.union(a, c)
            self.parked[z] = self.parked[a] + self.parked[c]
            self.dirty[z] = True
            self._concat_lists(a, c, z)
            self.stats.merges += 1
        return z

    def _concat_lists(self, a: int, b: int, z: int) -> None:
        self.out.concat(a, b, z)
        self.bck.concat(a, b, z)

    def _dead_sweep(self, start: int) -> None:
        """Mark dead every closed class whose released out-edges all hit dead classes."""
        find, dead, live = self.uf.find, self.dead, self.live
        out = self.out
        head, dst = out.head, out.arena.dst
        out_list = self._out
        work = [start]
        while work:
            x = find(work.pop())
            if dead[x] or live[x] or not self._class_closed(x):
                continue
            while True:
                node = head[x]
                if node == NIL:
                    break
                y = find(dst[node])
                if y == x or dead[y]:
                    out.pop(x)
                    continue
                break
            if head[x] != NIL or self.parked[x]:
                continue
            dead[x] = True
            for s in self.uf.iter(x):
                out_list.append((s, DEAD))
            for u, _ in self.bck.edges(x):
                p = find(u)
                if p != x and not dead[p] and not live[p]:
                    self.dirty[p] = True
                    work.append(p)

    def _class_closed(self, x: int) -> bool:
        # classes with more than one member only ever contain closed states
        return self._is_closed[x]

    def _sync_stats(self) -> None:
        self.stats.uf_finds = self.uf.finds
        self.stats.uf_unions = self.uf.unions
        self.stats.dfs_edge_visits = self._dfs_count[0]

    # -- audits ------------------------------------------------------------

    def _check(self, update, emitted: bool) -> None:
        if type(update) is Edge and not emitted:
            return
        problems = self.audit_problems()
        if problems:
            raise AssertionError(f"after update {self._index - 1}: " + "; ".join(problems[:5]))

    def audit_problems(self) -> list[str]:
        if self._all_edges is None:
            raise RuntimeError("engine was built without audit=True")
        problems = []
        n = len(self.live)
        ext = self._ext
        canon = canon_array(self.uf)
        U, V = self._all_edges.arrays()
        closed = np.asarray(self._is_closed, dtype=bool)
        live = np.asarray(self.live, dtype=bool)[canon]
        dead = np.asarray(self.dead, dtype=bool)[canon]
        got = np.where(live, LIVE_, np.where(dead, DEAD_, np.where(closed, UNKNOWN, OPEN)))
        want = expected_status(self, self._all_edges, self._terminals, n)
        for s in np.flatnonzero(got != want)[:5]:
            problems.append(f"status of {ext[s]} is {got[s]}, expected {want[s]}")
        # released edges are exactly the out-edges of closed states
        keep = closed[U]
        comp = scc_ids(n, U[keep], V[keep])
        merged = np.bincount(canon, minlength=n)[canon] > 1
        for s in np.flatnonzero(merged & ~closed)[:5]:
            problems.append(f"class {canon[s]} merges open state {ext[s]}")
        for s in np.flatnonzero(comp != comp[canon])[:5]:
            problems.append(f"class {canon[s]} is not strongly connected")
        # every cycle among released edges between undecided classes is collapsed
        X, Y = canon[U], canon[V]
        loose = keep & (X != Y) & (comp[U] == comp[V]) & ~live[U] & ~dead[U]
        for i in np.flatnonzero(loose)[:5]:
            problems.append(f"edge ({ext[U[i]]}, {ext[V[i]]}) lies on an uncollapsed cycle")
        return problems


class SimpleEngine(CondensationEngine):
    """Forward search from y for x on each released condensed edge x -> y."""

    name = "simple"

    def _insert(self, x: int, y: int) -> None:
        find, dead = self.uf.find, self.dead
        nxt, dst = self.out.arena.nxt, self.out.arena.dst
        pruned = self._pruned_out
        # iterative DFS; hits[c] records whether c reaches x
        hits = {y: False}
        stack = [(y, pruned(y))]
        visits = 0
        while stack:
            c, node = stack[-1]
            if node == NIL:
                stack.pop()
                if stack and hits[c]:
                    hits[stack[-1][0]] = True
                continue
            stack[-1] = (c, nxt[node])
            visits += 1
            t = find(dst[node])
            if t == c or dead[t]:
                continue
            if t == x:
                hits[c] = True
                continue
            seen = hits.get(t)
            if seen is None:
                hits[t] = False
                stack.append((t, pruned(t)))
            elif seen:
                hits[c] = True
        self._dfs_count[0] += visits
        if hits[y]:
            cycle = [x] + [c for c, h in hits.items() if h]
            self._merge_all(cycle)
