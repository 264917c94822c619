"""Naive baseline: reclassify the whole graph after every update."""
from __future__ import annotations

from ..core import DEAD, LIVE
from .base import DEAD_, LIVE_, OPEN, UNKNOWN, Engine


class NaiveEngine(Engine):
    """Recomputes the live set with a backward search from all terminals after
    every E/T update and the dead set with a backward search from all open
    and terminal states after every C update.  Nothing is carried between
    updates except the graph itself and the verdicts already printed.

    Only C can create dead states and only E/T can create live ones, so each
    update runs the one search whose answer can change.  Each search stops as
    soon as every state it could still mark has been found.
    """

    name = "naive"

    def __init__(self, audit: bool = False):
        super().__init__(audit)
        self._preds: list[list[int]] = []
        self._terminal_flag: list[bool] = []
        self._terminals: list[int] = []
        self._live: list[bool] = []
        self._dead: list[bool] = []
        self._n_live = 0
        self._n_dead = 0

    def _new_state(self, d: int) -> None:
        self._preds.append([])
        self._terminal_flag.append(False)
        self._live.append(False)
        self._dead.append(False)

    def _edge(self, u: int, v: int) -> None:
        self._preds[v].append(u)
        self._recompute_live()

    def _terminal(self, v: int) -> None:
        if not self._terminal_flag[v]:
            self._terminal_flag[v] = True
            self._terminals.append(v)
        self._recompute_live()

    def _close(self, v: int) -> None:
        self._recompute_dead()

    def _status(self, d: int) -> int:
        if self._live[d]:
            return LIVE_
        if self._dead[d]:
            return DEAD_
        return UNKNOWN if self._is_closed[d] else OPEN

    def _search(self, seeds: list[int], goal: int) -> bytearray:
        """Mark everything that reaches a seed; stop once ``goal`` are marked."""
        preds = self._preds
        mark = bytearray(len(preds))
        found = 0
        visits = 0
        for s in seeds:
            if not mark[s]:
                mark[s] = 1
                found += 1
        stack = list(seeds)
        while stack and found < goal:
            v = stack.pop()
            for u in preds[v]:
                visits += 1
                if not mark[u]:
                    mark[u] = 1
                    found += 1
                    stack.append(u)
        self.stats.dfs_edge_visits += visits
        return mark

    def _recompute_live(self) -> None:
        if not self._terminals:
            return
        n = len(self._preds)
        mark = self._search(self._terminals, n)
        live, out = self._live, self._out
        for v in range(n):
            if mark[v] and not live[v]:
                live[v] = True
                self._n_live += 1
                out.append((v, LIVE))

    def _recompute_dead(self) -> None:
        n = len(self._preds)
        closed, term = self._is_closed, self._terminal_flag
        seeds = [v for v in range(n) if term[v] or not closed[v]]
        # states already printed dead can never be reached again
        mark = self._search(seeds, n - self._n_dead)
        dead, live, out = self._dead, self._live, self._out
        for v in range(n):
            if not mark[v] and not dead[v] and not live[v]:
                dead[v] = True
                self._n_dead += 1
                out.append((v, DEAD))
