"""Shared machinery for the debug audits.

Audits run after every structural update, so on a graph with m edges each one
is O(m) at best.  The per-edge checks are therefore done on numpy arrays, and
the reference classification can come from a precomputed ``StatusTimeline``
(``engine.reference``) instead of a from-scratch snapshot.
"""
from __future__ import annotations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from ..core import classify_snapshot
from ..graph_store import NIL, EdgeLists


class EdgeLog:
    """Append-only (src, dst) record of every E update, over dense ids."""

    def __init__(self):
        self._u = np.empty(64, dtype=np.int64)
        self._v = np.empty(64, dtype=np.int64)
        self.size = 0

    def append(self, u: int, v: int) -> None:
        k = self.size
        if k == len(self._u):
            self._u = np.resize(self._u, 2 * k)
            self._v = np.resize(self._v, 2 * k)
        self._u[k] = u
        self._v[k] = v
        self.size = k + 1

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return self._u[: self.size], self._v[: self.size]

    def pairs(self) -> list[tuple[int, int]]:
        u, v = self.arrays()
        return list(zip(u.tolist(), v.tolist()))

    def __len__(self) -> int:
        return self.size


def canon_array(uf) -> np.ndarray:
    find = uf.find
    return np.fromiter((find(s) for s in range(len(uf))), dtype=np.int64, count=len(uf))


def expected_status(engine, edges: EdgeLog, terminals, n: int) -> np.ndarray:
    """Reference status of every dense id after the update just applied."""
    ref = getattr(engine, "reference", None)
    ext = engine._ext
    if ref is not None:
        at = engine._index - 1
        return np.fromiter((ref.status(ext[s], at) for s in range(n)), dtype=np.int64, count=n)
    closed = {s for s in range(n) if engine._is_closed[s]}
    snap = classify_snapshot((range(n), edges.pairs()), terminals, closed)
    return np.fromiter((int(snap[s]) for s in range(n)), dtype=np.int64, count=n)


def list_members(lists: EdgeLists, keys) -> tuple[np.ndarray, np.ndarray]:
    """(owner key, arena handle) for every node on the lists of ``keys``.

    Owners spread down the lists by pointer doubling, so the number of numpy
    rounds is logarithmic in the longest list.
    """
    arena = lists.arena
    size = len(arena)
    if size == 0:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    keys = np.asarray(keys, dtype=np.int64)
    # slot ``size`` stands for NIL and points at itself
    jump = np.asarray(arena.nxt + [size], dtype=np.int64)
    jump[jump == NIL] = size
    owner = np.full(size + 1, -1, dtype=np.int64)
    heads = np.asarray(lists.head, dtype=np.int64)[keys]
    mask = heads != NIL
    owner[heads[mask]] = keys[mask]
    # round k labels nodes 2^k .. 2^(k+1)-1 steps from a head
    while True:
        have = np.flatnonzero(owner[:size] >= 0)
        targets = jump[have]
        fresh = (targets != size) & (owner[targets] < 0)
        if not fresh.any():
            break
        owner[targets[fresh]] = owner[have[fresh]]
        jump = jump[jump]
    handles = np.flatnonzero(owner[:size] >= 0)
    return owner[handles], handles


def scc_ids(n: int, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Strongly connected component label of every vertex."""
    graph = csr_matrix((np.ones(len(u), dtype=np.int8), (u, v)), shape=(n, n))
    return connected_components(graph, directed=True, connection="strong")[1]


class ArenaMirror:
    """numpy copies of an arena's append-only src/dst columns, grown lazily."""

    def __init__(self, arena):
        self.arena = arena
        self.src = np.empty(0, dtype=np.int64)
        self.dst = np.empty(0, dtype=np.int64)

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        k, size = len(self.src), len(self.arena)
        if size > k:
            self.src = np.concatenate([self.src, np.asarray(self.arena.src[k:], dtype=np.int64)])
            self.dst = np.concatenate([self.dst, np.asarray(self.arena.dst[k:], dtype=np.int64)])
        return self.src, self.dst
