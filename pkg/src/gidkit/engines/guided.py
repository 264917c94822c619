"""Successor-forest engines: first-cut, logarithmic (Euler forest) and lazy.

All three share the same bookkeeping.  Every canonical class ``x`` has a
status, a reserve list ``res[x]`` of outgoing edges not yet examined, a
backward list ``bck[x]`` of incoming edges, and (while Unknown) exactly one
successor edge witnessing a path towards an open root.  The successor edges
form a forest over the non-live, non-dead classes whose roots are the open
classes.  Closing a root pops reserve edges until one attaches it under a
different tree, until it turns out to close a cycle (merge the cycle), or
until none are left (the class is dead).

The variants differ only in how ``_check_cycle(y, z)`` decides whether ``z``
hangs under root ``y``.
"""
from __future__ import annotations

from collections import deque

import numpy as np

from ..core import DEAD, LIVE, Edge
from ..euler_forest import EulerForest
from ..graph_store import NIL, EdgeArena, EdgeLists, dfs_reverse
from ..union_find import UnionFind
from .audit import ArenaMirror, EdgeLog, canon_array, expected_status, list_members, scc_ids
from .base import DEAD_, LIVE_, OPEN, UNKNOWN, Engine


class AuditError(AssertionError):
    pass


class GuidedEngine(Engine):
    name = "guided"

    def __init__(self, audit: bool = False):
        super().__init__(audit)
        self.uf = UnionFind()
        arena = EdgeArena()
        self.res = EdgeLists(arena)
        self.bck = EdgeLists(arena)
        self.state_of: list[int] = []
        # successor edge of an Unknown class, as original endpoints
        self.succ_src: list[int] = []
        self.succ_dst: list[int] = []
        self._dfs_count = [0]
        # every E update, kept only for audits
        self._all_edges = EdgeLog() if audit else None
        self._terminals: set[int] = set()
        self._classes_seen = 0
        self._mirror = None

    # -- hooks for the strategies ------------------------------------------

    def _check_cycle(self, y: int, z: int) -> bool:
        raise NotImplementedError

    def _on_set_succ(self, x: int, u: int, w: int) -> None:
        pass

    def _on_drop_succ(self, x: int) -> None:
        pass

    def _on_merged(self, z: int, a: int, b: int) -> None:
        pass

    # -- engine hooks ------------------------------------------------------

    def _new_state(self, d: int) -> None:
        self.uf.add()
        self.res.grow(d + 1)
        self.bck.grow(d + 1)
        self.state_of.append(OPEN)
        self.succ_src.append(NIL)
        self.succ_dst.append(NIL)

    def _status(self, d: int) -> int:
        return self.state_of[self.uf.find(d)]

    def _edge(self, u: int, v: int) -> None:
        if self._all_edges is not None:
            self._all_edges.append(u, v)
        find, status = self.uf.find, self.state_of
        x = find(u)
        if status[find(v)] == LIVE_:
            if status[x] != LIVE_:
                self._mark_live(x)
        elif status[x] != LIVE_:
            self.res.append(x, u, v)
            self.bck.append(find(v), u, v)

    def _terminal(self, v: int) -> None:
        if self.audit:
            self._terminals.add(v)
        y = self.uf.find(v)
        if self.state_of[y] != LIVE_:
            self._mark_live(y)

    def _mark_live(self, y: int) -> None:
        status = self.state_of
        order = dfs_reverse(y, self.bck, lambda x: status[x] != LIVE_, self.uf.find, self._dfs_count)
        out = self._out
        for x in order:
            if status[x] == UNKNOWN:
                self._drop_succ(x)
            status[x] = LIVE_
            for s in self.uf.iter(x):
                out.append((s, LIVE))

    def _set_succ(self, x: int, u: int, w: int) -> None:
        self.state_of[x] = UNKNOWN
        self.succ_src[x] = u
        self.succ_dst[x] = w
        self._on_set_succ(x, u, w)

    def _drop_succ(self, x: int) -> None:
        self._on_drop_succ(x)
        self.succ_src[x] = self.succ_dst[x] = NIL

    def _close(self, v: int) -> None:
        y = self.uf.find(v)
        if self.state_of[y] != OPEN:
            return
        work = deque([y])
        while work:
            self._close_one(work.popleft(), work)

    def _close_one(self, y: int, work: deque) -> None:
        find, status = self.uf.find, self.state_of
        y = find(y)
        if status[y] != OPEN:
            return
        res = self.res
        dst = res.arena.dst
        src = res.arena.src
        while True:
            node = res.pop(y)
            if node == NIL:
                break
            w = dst[node]
            z = find(w)
            if status[z] == DEAD_:
                continue
            if self._check_cycle(y, z):
                # collect the successor chain z -> ... -> y, then collapse it
                chain = []
                while z != y:
                    chain.append(z)
                    z = find(self.succ_dst[z])
                # the chain's successor edges become internal to the merged
                # class; the Euler forest keeps them as tree edges
                for c in chain:
                    self.succ_src[c] = self.succ_dst[c] = NIL
                    status[c] = OPEN
                    y = self._merge(y, c)
                status[y] = OPEN
                continue
            self._set_succ(y, src[node], w)
            return
        status[y] = DEAD_
        out = self._out
        for s in self.uf.iter(y):
            out.append((s, DEAD))
        succ_dst = self.succ_dst
        for u, _ in self.bck.edges(y):
            x = find(u)
            if status[x] == UNKNOWN and find(succ_dst[x]) == y:
                self._drop_succ(x)
                status[x] = OPEN
                work.append(x)

    def _merge(self, a: int, b: int) -> int:
        z = self.uf.union(a, b)
        self.res.concat(a, b, z)
        self.bck.concat(a, b, z)
        self.stats.merges += 1
        self._on_merged(z, a, b)
        return z

    def _sync_stats(self) -> None:
        self.stats.uf_finds = self.uf.finds
        self.stats.uf_unions = self.uf.unions
        self.stats.dfs_edge_visits = self._dfs_count[0]

    # -- audits ------------------------------------------------------------

    def _check(self, update, emitted: bool) -> None:
        if type(update) is Edge and not emitted:
            # only a reserve append can have happened; nothing structural moved
            return
        problems = self.audit_problems()
        if problems:
            raise AuditError(f"after update {self._index - 1}: " + "; ".join(problems[:5]))

    def audit_problems(self) -> list[str]:
        """Check the structural invariants against a from-scratch recompute."""
        if self._all_edges is None:
            raise RuntimeError("engine was built without audit=True")
        problems: list[str] = []
        n = len(self.state_of)
        ext = self._ext
        status = np.asarray(self.state_of, dtype=np.int64)
        canon = canon_array(self.uf)
        U, V = self._all_edges.arrays()
        closed = np.asarray(self._is_closed, dtype=bool)
        # status correctness
        want = expected_status(self, self._all_edges, self._terminals, n)
        for s in np.flatnonzero(status[canon] != want)[:5]:
            problems.append(f"status of {ext[s]} is {status[canon[s]]}, expected {want[s]}")
        roots = np.flatnonzero(canon == np.arange(n))
        sizes = np.bincount(canon, minlength=n)
        # merge equivalence: classes are exactly bi-reachable sets of closed states
        if len(roots) != self._classes_seen:
            self._classes_seen = len(roots)
            keep = closed[U]
            comp = scc_ids(n, U[keep], V[keep])
            merged = sizes[canon] > 1
            for s in np.flatnonzero(merged & ~closed)[:5]:
                problems.append(f"class {canon[s]} merges open state {ext[s]}")
            for s in np.flatnonzero(merged & (comp != comp[canon]))[:5]:
                problems.append(f"class {canon[s]} is not bi-reachable")
        # successor edges
        sd = np.asarray(self.succ_dst, dtype=np.int64)
        ss = np.asarray(self.succ_src, dtype=np.int64)
        unknown = roots[status[roots] == UNKNOWN]
        for x in unknown[sd[unknown] == NIL][:5]:
            problems.append(f"unknown class {x} without successor")
        unknown = unknown[sd[unknown] != NIL]
        t = status[canon[sd[unknown]]]
        for x in unknown[(t != UNKNOWN) & (t != OPEN)][:5]:
            problems.append(f"successor of {x} has status {status[canon[sd[x]]]}")
        for x in unknown[canon[ss[unknown]] != unknown][:5]:
            problems.append(f"successor edge of {x} does not leave it")
        opened = roots[status[roots] == OPEN]
        for x in opened[sd[opened] != NIL][:5]:
            problems.append(f"open class {x} has a successor")
        # no cycles among successor edges: follow each chain once
        nxt = np.full(n, -1, dtype=np.int64)
        nxt[unknown] = canon[sd[unknown]]
        mark = np.zeros(n, dtype=np.int8)  # 0 new, 1 on the current walk, 2 finished
        for r in unknown.tolist():
            walk = []
            x = r
            while x >= 0 and mark[x] == 0:
                mark[x] = 1
                walk.append(x)
                x = int(nxt[x])
            if x >= 0 and mark[x] == 1:
                problems.append(f"successor cycle through {x}")
            mark[walk] = 2
        # edge representation
        arena = self.res.arena
        owner, handles = list_members(self.res, roots)
        if self._mirror is None:
            self._mirror = ArenaMirror(arena)
        a_src, a_dst = self._mirror.arrays()
        held = (owner * n + a_src[handles]) * n + a_dst[handles]
        X, Y = canon[U], canon[V]
        ok = np.isin((X * n + U) * n + V, held)
        ok |= (status[X] == UNKNOWN) & (ss[X] == U) & (sd[X] == V)
        ok |= (X == Y) | (status[X] == LIVE_) | (status[Y] == DEAD_)
        for i in np.flatnonzero(~ok)[:5]:
            problems.append(f"edge ({ext[U[i]]}, {ext[V[i]]}) is unaccounted for")
        classes = {int(r): None for r in roots}
        problems.extend(self._strategy_audit(classes, canon, sizes))
        return problems

    def _strategy_audit(self, classes, canon, sizes) -> list[str]:
        return []


class FirstCutEngine(GuidedEngine):
    """Finds the root of ``z`` by walking successor pointers."""

    name = "firstcut"

    def _check_cycle(self, y: int, z: int) -> bool:
        find, status, succ = self.uf.find, self.state_of, self.succ_dst
        steps = 0
        while status[z] == UNKNOWN:
            z = find(succ[z])
            steps += 1
        self.stats.walk_steps += steps
        return z == y


class LogEngine(GuidedEngine):
    """Keeps the successor forest, lifted to original states, in an Euler forest."""

    name = "log"

    def __init__(self, audit: bool = False):
        super().__init__(audit)
        self.ef = EulerForest()

    def _new_state(self, d: int) -> None:
        super()._new_state(d)
        self.ef.ensure_vertex(d)

    def _check_cycle(self, y: int, z: int) -> bool:
        self.stats.ef_ops += 1
        return self.ef.connected(y, z)

    def _on_set_succ(self, x: int, u: int, w: int) -> None:
        self.stats.ef_ops += 1
        self.ef.add(u, w)

    def _on_drop_succ(self, x: int) -> None:
        self.stats.ef_ops += 1
        self.ef.remove(self.succ_src[x], self.succ_dst[x])

    def _strategy_audit(self, classes, canon, sizes) -> list[str]:
        problems = [f"euler forest: {p}" for p in self.ef.audit()]
        status = self.state_of
        cls = canon.tolist()
        want = set()
        for root in classes:
            if status[root] == UNKNOWN:
                u, w = self.succ_src[root], self.succ_dst[root]
                want.add((min(u, w), max(u, w)))
        have_inter = set()
        intra: dict[int, int] = {}
        for a, b in self.ef.edges():
            if cls[a] != cls[b]:
                have_inter.add((a, b))
            else:
                intra[cls[a]] = intra.get(cls[a], 0) + 1
        if have_inter != want:
            problems.append(f"EF inter-edges {sorted(have_inter ^ want)[:3]} differ from successor edges")
        for root in classes:
            # a spanning tree of k members has k - 1 edges and is connected
            if status[root] == UNKNOWN and intra.get(root, 0) != sizes[root] - 1:
                problems.append(f"class {root}: EF intra-edges do not form a tree")
        for s, root in enumerate(cls):
            if s != root and status[root] == UNKNOWN and not self.ef.connected(root, s):
                problems.append(f"class {root}: EF intra-edges are disconnected")
                break
        return problems


class LazyEngine(GuidedEngine):
    """Finds roots through per-class jump lists refreshed on each visit."""

    name = "lazy"

    def __init__(self, audit: bool = False):
        super().__init__(audit)
        self.jumps: list[list[int]] = []

    def _new_state(self, d: int) -> None:
        super()._new_state(d)
        self.jumps.append([])

    def _check_cycle(self, y: int, z: int) -> bool:
        return self._get_root(z) == y

    def _get_root(self, z: int) -> int:
        find, status, jumps = self.uf.find, self.state_of, self.jumps
        path = []
        pushes = 0
        while status[z] != OPEN:
            js = jumps[z]
            if not js:
                js.append(self.succ_dst[z])
                pushes += 1
            while True:
                nz = find(js.pop())
                if status[nz] != DEAD_:
                    break
            js.append(nz)
            path.append((z, nz))
            z = nz
        for a, b in reversed(path):
            ja, jb = jumps[a], jumps[b]
            k = len(ja)
            if k <= len(jb):
                ja.append(jb[k - 1])
                pushes += 1
        self.stats.jump_pushes += pushes
        self.stats.walk_steps += len(path)
        return z

    def _on_set_succ(self, x: int, u: int, w: int) -> None:
        self.jumps[x].clear()

    def _on_drop_succ(self, x: int) -> None:
        self.jumps[x].clear()

    def _on_merged(self, z: int, a: int, b: int) -> None:
        self.jumps[a].clear()
        self.jumps[b].clear()

    def _strategy_audit(self, classes, canon, sizes) -> list[str]:
        problems = []
        status, succ = self.state_of, self.succ_dst
        cls, size = canon.tolist(), sizes.tolist()
        # successor forest over classes, hung from the end of each chain;
        # cum[x] counts the states from the chain's end down to x inclusive
        children: dict[int, list[int]] = {}
        tops = []
        for root in classes:
            if status[root] == UNKNOWN and succ[root] != NIL:
                children.setdefault(cls[succ[root]], []).append(root)
            else:
                tops.append(root)
        cum, tin, tout = {}, {}, {}
        clock = 0
        for top in tops:
            cum[top] = size[top]
            stack = [(top, False)]
            while stack:
                x, done = stack.pop()
                if done:
                    tout[x] = clock
                    continue
                tin[x] = clock
                clock += 1
                stack.append((x, True))
                for c in children.get(x, ()):
                    cum[c] = cum[x] + size[c]
                    stack.append((c, False))

        def above(c, x):  # c lies on the successor chain starting at x
            return c in tin and x in tin and tin[c] <= tin[x] < tout[c]

        for root in classes:
            js = self.jumps[root]
            if not js:
                continue
            if status[root] != UNKNOWN:
                problems.append(f"class {root} has jumps but is not unknown")
                continue
            first = cls[js[0]]
            if first != cls[succ[root]]:
                problems.append(f"class {root}: first jump is not the successor")
            if status[cls[js[-1]]] == DEAD_:
                continue  # stale tail, popped on the next visit
            prev = first
            for i, j in enumerate(js):
                c = cls[j]
                if not above(c, first):
                    problems.append(f"class {root}: jump {i} is not on the successor chain")
                    break
                if cum[first] - cum[c] + size[c] < 2**i:
                    problems.append(f"class {root}: jump {i} spans fewer than {2 ** i} states")
                if not above(c, prev):
                    problems.append(f"class {root}: jump {i} precedes jump {i - 1}")
                prev = c
        return problems
