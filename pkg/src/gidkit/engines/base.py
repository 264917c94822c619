"""Engine contract shared by every classifier, plus timed replay."""
from __future__ import annotations

import time
from dataclasses import dataclass, fields, replace
from typing import Iterable

from ..core import (
    DEAD,
    LIVE,
    Closed,
    Edge,
    Event,
    InvalidUpdate,
    Status,
    Terminal,
    Update,
)

# status codes used inside engines; values match core.Status
OPEN, UNKNOWN, LIVE_, DEAD_ = 0, 1, 2, 3


@dataclass
class CounterSet:
    m: int = 0  # E updates received
    n: int = 0  # states registered
    uf_finds: int = 0
    uf_unions: int = 0
    ef_ops: int = 0  # Euler-forest add/remove/connected calls
    dfs_edge_visits: int = 0
    jump_pushes: int = 0
    merges: int = 0
    dead_events: int = 0
    live_events: int = 0
    walk_steps: int = 0  # successor-chain hops while looking for a root
    back_visits: int = 0  # arcs inspected by BFGT's bounded backward search

    def as_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


class EngineError(RuntimeError):
    def __init__(self, index: int, cause: BaseException):
        super().__init__(f"update {index}: {type(cause).__name__}: {cause}")
        self.index = index
        self.cause = cause


class Timeout(RuntimeError):
    def __init__(self, index: int, elapsed_ns: int):
        super().__init__(f"timed out after {elapsed_ns / 1e9:.3f}s at update {index}")
        self.index = index
        self.elapsed_ns = elapsed_ns


class Engine:
    """Online GID classifier.

    Subclasses implement ``_edge``, ``_terminal`` and ``_close`` over dense
    internal ids and report verdicts through ``_out``.  This class owns id
    interning, the validity check on edges, duplicate-close filtering and
    event assembly.
    """

    name = "engine"

    def __init__(self, audit: bool = False):
        self.audit = audit
        # optional core.StatusTimeline for the trace being fed; audits then
        # read expected statuses from it instead of reclassifying
        self.reference = None
        self.stats = CounterSet()
        self._ids: dict[int, int] = {}
        self._ext: list[int] = []
        self._is_closed: list[bool] = []
        self._index = 0
        self._out: list[tuple[int, str]] = []

    # -- hooks ---------------------------------------------------------------

    def _new_state(self, d: int) -> None:
        raise NotImplementedError

    def _edge(self, u: int, v: int) -> None:
        raise NotImplementedError

    def _terminal(self, v: int) -> None:
        raise NotImplementedError

    def _close(self, v: int) -> None:
        raise NotImplementedError

    def _status(self, d: int) -> int:
        raise NotImplementedError

    def _check(self, update: Update, emitted: bool) -> None:
        """Debug audit run after each update when ``audit`` is on."""

    def _sync_stats(self) -> None:
        """Copy counters kept elsewhere (union-find, etc.) into ``stats``."""

    # -- public surface ------------------------------------------------------

    def intern(self, s: int) -> int:
        d = self._ids.get(s)
        if d is None:
            d = len(self._ext)
            self._ids[s] = d
            self._ext.append(s)
            self._is_closed.append(False)
            self.stats.n += 1
            self._new_state(d)
        return d

    def on_update(self, update: Update) -> list[Event]:
        index = self._index
        out = self._out = []
        kind = type(update)
        if kind is Edge:
            u = self.intern(update.src)
            v = self.intern(update.dst)
            if self._is_closed[u]:
                raise InvalidUpdate(index, f"edge from closed state {update.src}")
            self.stats.m += 1
            self._edge(u, v)
        elif kind is Terminal:
            self._terminal(self.intern(update.state))
        elif kind is Closed:
            v = self.intern(update.state)
            if not self._is_closed[v]:
                self._is_closed[v] = True
                self._close(v)
        else:
            raise TypeError(f"not an update: {update!r}")
        self._index = index + 1
        if self.audit:
            self._check(update, bool(out))
        if not out:
            return []
        ext = self._ext
        events = [Event(index, verdict, ext[d]) for d, verdict in out]
        events.sort(key=lambda e: (e.state, e.verdict))
        for e in events:
            if e.verdict == LIVE:
                self.stats.live_events += 1
            else:
                self.stats.dead_events += 1
        return events

    def status(self, state: int) -> Status:
        d = self._ids.get(state)
        if d is None:
            raise KeyError(f"state {state} has not been mentioned")
        return Status(self._status(d))

    def statuses(self) -> dict[int, Status]:
        return {s: Status(self._status(d)) for s, d in self._ids.items()}

    def counters(self) -> CounterSet:
        self._sync_stats()
        return replace(self.stats)

    @property
    def updates_seen(self) -> int:
        return self._index


@dataclass
class ReplayResult:
    events: list[Event]
    counters: CounterSet
    wall_ns: int
    outcome: str = "ok"  # "ok" | "timeout"


CHECK_EVERY = 1024


def replay(engine: Engine, trace: Iterable[Update], timeout: float | None = None) -> ReplayResult:
    """Feed ``trace`` to ``engine`` and time it with a monotonic clock.

    With a ``timeout`` (seconds) the clock is checked every 1024 updates and
    the run stops early with outcome ``"timeout"``.
    """
    events: list[Event] = []
    on_update = engine.on_update
    clock = time.perf_counter_ns
    limit = None if timeout is None else int(timeout * 1e9)
    start = clock()
    index = 0
    try:
        for index, upd in enumerate(trace):
            fresh = on_update(upd)
            if fresh:
                events.extend(fresh)
            if limit is not None and index % CHECK_EVERY == CHECK_EVERY - 1:
                if clock() - start > limit:
                    return ReplayResult(events, engine.counters(), clock() - start, "timeout")
    except InvalidUpdate:
        raise
    except Exception as exc:
        raise EngineError(index, exc) from exc
    elapsed = clock() - start
    if limit is not None and elapsed > limit:
        return ReplayResult(events, engine.counters(), elapsed, "timeout")
    return ReplayResult(events, engine.counters(), elapsed)


__all__ = [
    "CounterSet",
    "Engine",
    "EngineError",
    "ReplayResult",
    "Timeout",
    "replay",
    "OPEN",
    "UNKNOWN",
    "LIVE_",
    "DEAD_",
    "LIVE",
    "DEAD",
]
