"""Dynamic undirected forest with O(log n) link, cut and connectivity.

Each tree is stored as its Euler tour, kept in a height-balanced (AVL)
sequence tree.  The tour holds one occurrence node per vertex and two arc
nodes per tree edge, (u, v) and (v, u), so a tree with k vertices has a tour
of k + 2(k - 1) nodes.  A valid tour read cyclically is a closed walk: a
vertex node ``v`` may only appear while the walk stands at ``v``, and an arc
node ``(a, b)`` moves the walk from ``a`` to ``b``.

Nodes live in parallel lists indexed by integer handles; handle 0 is the
empty tree.  Two vertices are connected iff their occurrence nodes share a
sequence-tree root.
"""
from __future__ import annotations

from typing import Hashable


class ForestError(RuntimeError):
    """Contract violation: linking connected vertices or cutting a non-edge."""


class EulerForest:
    def __init__(self):
        # handle 0 is the nil sentinel; height 0, never written meaningfully
        self._left = [0]
        self._right = [0]
        self._parent = [0]
        self._height = [0]
        self._label: list = [None]
        self._free: list[int] = []
        self._vnode: dict[Hashable, int] = {}
        self._edges: dict[tuple, tuple[int, int]] = {}
        self.splits = 0
        self.joins = 0
        self.rotations = 0

    # -- node arena --------------------------------------------------------

    def _new_node(self, label) -> int:
        if self._free:
            x = self._free.pop()
            self._left[x] = self._right[x] = self._parent[x] = 0
            self._height[x] = 1
            self._label[x] = label
            return x
        self._left.append(0)
        self._right.append(0)
        self._parent.append(0)
        self._height.append(1)
        self._label.append(label)
        return len(self._left) - 1

    # -- AVL primitives ----------------------------------------------------

    def _rotate_right(self, x: int) -> int:
        L, R, P, H = self._left, self._right, self._parent, self._height
        y = L[x]
        b = R[y]
        p = P[x]
        L[x] = b
        if b:
            P[b] = x
        R[y] = x
        P[x] = y
        P[y] = p
        if p:
            if L[p] == x:
                L[p] = y
            else:
                R[p] = y
        hl, hr = H[L[x]], H[R[x]]
        H[x] = (hl if hl > hr else hr) + 1
        hl, hr = H[L[y]], H[x]
        H[y] = (hl if hl > hr else hr) + 1
        self.rotations += 1
        return y

    def _rotate_left(self, x: int) -> int:
        L, R, P, H = self._left, self._right, self._parent, self._height
        y = R[x]
        b = L[y]
        p = P[x]
        R[x] = b
        if b:
            P[b] = x
        L[y] = x
        P[x] = y
        P[y] = p
        if p:
            if L[p] == x:
                L[p] = y
            else:
                R[p] = y
        hl, hr = H[L[x]], H[R[x]]
        H[x] = (hl if hl > hr else hr) + 1
        hl, hr = H[x], H[R[y]]
        H[y] = (hl if hl > hr else hr) + 1
        self.rotations += 1
        return y

    def _fix_up(self, x: int) -> int:
        """Restore heights and balance from ``x`` to the root; return the root."""
        L, R, P, H = self._left, self._right, self._parent, self._height
        while True:
            l, r = L[x], R[x]
            hl, hr = H[l], H[r]
            if hl > hr + 1:
                if H[L[l]] < H[R[l]]:
                    self._rotate_left(l)
                x = self._rotate_right(x)
            elif hr > hl + 1:
                if H[R[r]] < H[L[r]]:
                    self._rotate_right(r)
                x = self._rotate_left(x)
            else:
                H[x] = (hl if hl > hr else hr) + 1
            p = P[x]
            if not p:
                return x
            x = p

    def _join3(self, a: int, k: int, b: int) -> int:
        """Concatenate tree ``a``, single node ``k`` and tree ``b``."""
        L, R, P, H = self._left, self._right, self._parent, self._height
        self.joins += 1
        ha, hb = H[a], H[b]
        if ha > hb + 1:
            prev, c = 0, a
            while H[c] > hb + 1:
                prev, c = c, R[c]
            L[k] = c
            R[k] = b
            if c:
                P[c] = k
            if b:
                P[b] = k
            H[k] = max(H[c], hb) + 1
            R[prev] = k
            P[k] = prev
            return self._fix_up(prev)
        if hb > ha + 1:
            prev, c = 0, b
            while H[c] > ha + 1:
                prev, c = c, L[c]
            R[k] = c
            L[k] = a
            if c:
                P[c] = k
            if a:
                P[a] = k
            H[k] = max(H[c], ha) + 1
            L[prev] = k
            P[k] = prev
            return self._fix_up(prev)
        L[k] = a
        R[k] = b
        P[k] = 0
        if a:
            P[a] = k
        if b:
            P[b] = k
        H[k] = (ha if ha > hb else hb) + 1
        return k

    def _split(self, x: int) -> tuple[int, int]:
        """Cut the sequence around node ``x``: (before, after); ``x`` is isolated."""
        L, R, P, H = self._left, self._right, self._parent, self._height
        self.splits += 1
        path = []
        c, p = x, P[x]
        while p:
            path.append((p, R[p] == c))
            c, p = p, P[p]
        lt, rt = L[x], R[x]
        if lt:
            P[lt] = 0
        if rt:
            P[rt] = 0
        L[x] = R[x] = P[x] = 0
        H[x] = 1
        for p, from_right in path:
            if from_right:
                sub = L[p]
                if sub:
                    P[sub] = 0
                L[p] = R[p] = P[p] = 0
                lt = self._join3(sub, p, lt)
            else:
                sub = R[p]
                if sub:
                    P[sub] = 0
                L[p] = R[p] = P[p] = 0
                rt = self._join3(rt, p, sub)
        return lt, rt

    def _concat(self, a: int, b: int) -> int:
        if not a:
            return b
        if not b:
            return a
        L = self._left
        k = b
        while L[k]:
            k = L[k]
        _, rest = self._split(k)
        return self._join3(a, k, rest)

    def _root(self, x: int) -> int:
        P = self._parent
        p = P[x]
        while p:
            x = p
            p = P[x]
        return x

    def _reroot(self, v) -> int:
        x = self._vnode[v]
        before, after = self._split(x)
        return self._concat(self._join3(0, x, after), before)

    # -- public surface ----------------------------------------------------

    def ensure_vertex(self, v) -> None:
        if v not in self._vnode:
            self._vnode[v] = self._new_node(v)

    def __contains__(self, v) -> bool:
        return v in self._vnode

    def connected(self, u, v) -> bool:
        if u == v:
            return True
        return self._root(self._vnode[u]) == self._root(self._vnode[v])

    def has_edge(self, u, v) -> bool:
        return ((u, v) if u <= v else (v, u)) in self._edges

    def add(self, u, v) -> None:
        if u == v:
            raise ForestError(f"self-loop ({u}, {v}) cannot be a forest edge")
        self.ensure_vertex(u)
        self.ensure_vertex(v)
        if self.connected(u, v):
            raise ForestError(f"add({u}, {v}): vertices already connected")
        tu = self._reroot(u)
        tv = self._reroot(v)
        a = self._new_node((u, v))
        b = self._new_node((v, u))
        self._join3(self._join3(tu, a, tv), b, 0)
        key = (u, v) if u <= v else (v, u)
        self._edges[key] = (a, b) if key == (u, v) else (b, a)

    def remove(self, u, v) -> None:
        key = (u, v) if u <= v else (v, u)
        arcs = self._edges.pop(key, None)
        if arcs is None:
            raise ForestError(f"remove({u}, {v}): no such forest edge")
        lo, hi = key
        # arcs = (lo->hi, hi->lo); rooted at lo, lo->hi precedes hi->lo
        down, up = arcs
        self._reroot(lo)
        before, rest = self._split(down)
        _, after = self._split(up)
        self._concat(before, after)
        for node in arcs:
            self._label[node] = None
            self._free.append(node)

    def edges(self) -> list[tuple]:
        return list(self._edges)

    def vertices(self) -> list:
        return list(self._vnode)

    # -- inspection --------------------------------------------------------

    def _inorder(self, root: int) -> list[int]:
        L, R = self._left, self._right
        out, stack, x = [], [], root
        while stack or x:
            while x:
                stack.append(x)
                x = L[x]
            x = stack.pop()
            out.append(x)
            x = R[x]
        return out

    def tour(self, v) -> list:
        """The Euler tour containing ``v`` as a list of labels."""
        root = self._root(self._vnode[v])
        return [self._label[x] for x in self._inorder(root)]

    def components(self) -> list[set]:
        groups: dict[int, set] = {}
        for v, x in self._vnode.items():
            groups.setdefault(self._root(x), set()).add(v)
        return list(groups.values())

    def audit(self) -> list[str]:
        """Structural checks; returns a list of problems (empty when sound)."""
        L, R, P, H = self._left, self._right, self._parent, self._height
        problems: list[str] = []
        roots = {self._root(x) for x in self._vnode.values()}
        seen_nodes = 0
        for root in roots:
            if P[root]:
                problems.append(f"root {root} has a parent")
            nodes = self._inorder(root)
            seen_nodes += len(nodes)
            for x in nodes:
                for c in (L[x], R[x]):
                    if c and P[c] != x:
                        problems.append(f"node {c}: parent pointer mismatch")
                hl, hr = H[L[x]], H[R[x]]
                if H[x] != max(hl, hr) + 1:
                    problems.append(f"node {x}: stale height")
                if abs(hl - hr) > 1:
                    problems.append(f"node {x}: unbalanced ({hl} vs {hr})")
            labels = [self._label[x] for x in nodes]
            verts = [lab for lab in labels if not isinstance(lab, tuple)]
            arcs = [lab for lab in labels if isinstance(lab, tuple)]
            k = len(verts)
            if len(nodes) != k + 2 * (k - 1):
                problems.append(f"tour of {k} vertices has {len(nodes)} nodes")
            if len(set(verts)) != k:
                problems.append("vertex occurring twice in one tour")
            if len(arcs) != 2 * len({(min(a, b), max(a, b)) for a, b in arcs}):
                problems.append("arc without its reverse in tour")
            first = labels[0]
            pos = first[0] if isinstance(first, tuple) else first
            start = pos
            for lab in labels:
                if isinstance(lab, tuple):
                    if lab[0] != pos:
                        problems.append(f"arc {lab} leaves {lab[0]} while walk is at {pos}")
                        break
                    pos = lab[1]
                elif lab != pos:
                    problems.append(f"vertex {lab} visited while walk is at {pos}")
                    break
            else:
                if pos != start:
                    problems.append("tour is not closed")
        if seen_nodes != len(self._vnode) + 2 * len(self._edges):
            problems.append("node count does not match vertices + 2 * edges")
        return problems
