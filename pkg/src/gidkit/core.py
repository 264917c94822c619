"""Guided incremental digraphs: updates, traces, and ground-truth classification.

A trace is a sequence of three kinds of updates over integer state ids:

    E u v   add the directed edge u -> v
    T u     label u terminal
    C u     label u closed (no further E(u, .) or T(u) may follow)

Two oracles are provided.  ``oracle_events_replay`` is the literal definition:
classify every prefix from scratch and report the states whose status just
became Live or Dead.  ``oracle_events`` computes the same event list offline in
near-linear time (bottleneck paths for liveness, an SCC sweep for deadness) and
is what the test-suite uses on large traces; the two are cross-checked against
each other on small ones.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterable, Iterator, NamedTuple, Union

MAX_STATE_ID = 2**32 - 1


class Edge(NamedTuple):
    src: int
    dst: int


class Terminal(NamedTuple):
    state: int


class Closed(NamedTuple):
    state: int


Update = Union[Edge, Terminal, Closed]
Trace = list  # list[Update]


class Status(IntEnum):
    OPEN = 0
    UNKNOWN = 1
    LIVE = 2
    DEAD = 3

    def __str__(self) -> str:
        return self.name.capitalize()


LIVE = "Live"
DEAD = "Dead"


class Event(NamedTuple):
    index: int
    verdict: str  # "Live" | "Dead"
    state: int

    def format(self, verbose: bool = False) -> str:
        text = f"{self.verdict} {self.state}"
        return f"@{self.index} {text}" if verbose else text


class TraceError(ValueError):
    """A trace file line could not be parsed."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class InvalidUpdate(ValueError):
    """An update breaks trace validity (edge or terminal label after close)."""

    def __init__(self, index: int, reason: str):
        super().__init__(f"update {index}: {reason}")
        self.index = index
        self.reason = reason


# ---------------------------------------------------------------------------
# text format


def _state_id(token: str, lineno: int) -> int:
    try:
        value = int(token, 10)
    except ValueError:
        raise TraceError(lineno, f"state id {token!r} is not a decimal integer") from None
    if value < 0 or value > MAX_STATE_ID:
        raise TraceError(lineno, f"state id {value} out of range [0, 2^32-1]")
    return value


_ARITY = {"E": 2, "T": 1, "C": 1}


def parse_trace(text: str | Iterable[str]) -> Trace:
    lines = text.splitlines() if isinstance(text, str) else text
    updates: Trace = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        op = parts[0]
        if op not in _ARITY:
            raise TraceError(lineno, f"unknown update kind {op!r}")
        if len(parts) - 1 != _ARITY[op]:
            raise TraceError(lineno, f"{op} takes {_ARITY[op]} state id(s), got {len(parts) - 1}")
        ids = [_state_id(tok, lineno) for tok in parts[1:]]
        if op == "E":
            updates.append(Edge(ids[0], ids[1]))
        elif op == "T":
            updates.append(Terminal(ids[0]))
        else:
            updates.append(Closed(ids[0]))
    return updates


def format_update(update: Update) -> str:
    if type(update) is Edge:
        return f"E {update.src} {update.dst}"
    if type(update) is Terminal:
        return f"T {update.state}"
    return f"C {update.state}"


def serialize_trace(trace: Iterable[Update], header: str | None = None) -> str:
    lines = []
    if header:
        lines.extend(f"# {h}" for h in header.splitlines())
    lines.extend(format_update(u) for u in trace)
    return "\n".join(lines) + ("\n" if lines else "")


def read_trace(path) -> Trace:
    with open(path, encoding="utf-8") as fh:
        return parse_trace(fh.read())


def write_trace(path, trace: Iterable[Update], header: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_trace(trace, header))


def format_events(events: Iterable[Event], verbose: bool = False) -> str:
    return "".join(e.format(verbose) + "\n" for e in events)


# ---------------------------------------------------------------------------
# validity and denotation


@dataclass
class Validation:
    violation: InvalidUpdate | None = None
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.violation is None


def validate(trace: Iterable[Update]) -> Validation:
    """Check that no E(u, .) or T(u) follows C(u).

    Repeated C(u) is reported as a warning only; engines treat it as a no-op.
    """
    closed: set[int] = set()
    report = Validation()
    for i, upd in enumerate(trace):
        kind = type(upd)
        if kind is Edge:
            if upd.src in closed:
                report.violation = InvalidUpdate(i, f"edge from closed state {upd.src}")
                return report
        elif kind is Terminal:
            if upd.state in closed:
                report.violation = InvalidUpdate(i, f"terminal label on closed state {upd.state}")
                return report
        elif upd.state in closed:
            report.warnings.append(f"update {i}: duplicate close of state {upd.state}")
        else:
            closed.add(upd.state)
    return report


def states_of(update: Update) -> tuple[int, ...]:
    if type(update) is Edge:
        return (update.src, update.dst)
    return (update.state,)


def denotation(trace: Iterable[Update]) -> tuple[set[int], set[tuple[int, int]]]:
    vertices: set[int] = set()
    edges: set[tuple[int, int]] = set()
    for upd in trace:
        vertices.update(states_of(upd))
        if type(upd) is Edge:
            edges.add((upd.src, upd.dst))
    return vertices, edges


def labels(trace: Iterable[Update]) -> tuple[set[int], set[int]]:
    """Return (terminal states, closed states) of a trace."""
    terminals, closed = set(), set()
    for upd in trace:
        if type(upd) is Terminal:
            terminals.add(upd.state)
        elif type(upd) is Closed:
            closed.add(upd.state)
    return terminals, closed


# ---------------------------------------------------------------------------
# classification


def _reverse_reach(seeds: Iterable[int], preds: dict[int, list[int]]) -> set[int]:
    seen = set(seeds)
    stack = list(seen)
    while stack:
        v = stack.pop()
        for u in preds.get(v, ()):
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return seen


def classify_snapshot(graph, terminals, closed) -> dict[int, Status]:
    """Classify every vertex of ``graph = (V, E)`` from scratch."""
    vertices, edges = graph
    preds: dict[int, list[int]] = {}
    for u, v in edges:
        preds.setdefault(v, []).append(u)
    live = _reverse_reach((t for t in terminals if t in vertices), preds)
    not_dead = _reverse_reach(live | {v for v in vertices if v not in closed}, preds)
    result = {}
    for v in vertices:
        if v in live:
            result[v] = Status.LIVE
        elif v not in not_dead:
            result[v] = Status.DEAD
        elif v in closed:
            result[v] = Status.UNKNOWN
        else:
            result[v] = Status.OPEN
    return result


def oracle_events_replay(trace: Iterable[Update]) -> list[Event]:
    """Reference oracle: reclassify every prefix and diff the Live/Dead sets.

    Quadratic; intended for traces of a few thousand updates at most.
    """
    vertices: set[int] = set()
    edges: set[tuple[int, int]] = set()
    terminals: set[int] = set()
    closed: set[int] = set()
    live: set[int] = set()
    dead: set[int] = set()
    events: list[Event] = []
    for i, upd in enumerate(trace):
        vertices.update(states_of(upd))
        if type(upd) is Edge:
            edges.add((upd.src, upd.dst))
        elif type(upd) is Terminal:
            terminals.add(upd.state)
        else:
            closed.add(upd.state)
        status = classify_snapshot((vertices, edges), terminals, closed)
        fresh = []
        for v, st in status.items():
            if st is Status.LIVE and v not in live:
                live.add(v)
                fresh.append((v, LIVE))
            elif st is Status.DEAD and v not in dead:
                dead.add(v)
                fresh.append((v, DEAD))
        fresh.sort()
        events.extend(Event(i, verdict, v) for v, verdict in fresh)
    return events


def strongly_connected_components(n: int, succ: list[list[int]]) -> list[list[int]]:
    """Iterative Tarjan.  Components come out sinks-first (reverse topological)."""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        work = [(root, iter(succ[root]))]
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def oracle_events(trace: Iterable[Update]) -> list[Event]:
    """Offline ground truth with the same output as ``oracle_events_replay``.

    A state becomes Live at the earliest update index that completes a path to
    a terminal, i.e. the min over paths of the max insertion index along the
    path (a bottleneck shortest path).  A never-Live state becomes Dead exactly
    when the last state it can reach in the final graph is closed: once all of
    its reachable states are closed, their edge sets are complete, so the
    reachable set can no longer grow.
    """
    ids: dict[int, int] = {}
    ext: list[int] = []

    def intern(s: int) -> int:
        d = ids.get(s)
        if d is None:
            d = ids[s] = len(ext)
            ext.append(s)
        return d

    first_edge: dict[tuple[int, int], int] = {}
    term_time: dict[int, int] = {}
    close_time: dict[int, int] = {}
    for i, upd in enumerate(trace):
        if type(upd) is Edge:
            key = (intern(upd.src), intern(upd.dst))
            if key not in first_edge:
                first_edge[key] = i
        elif type(upd) is Terminal:
            term_time.setdefault(intern(upd.state), i)
        else:
            close_time.setdefault(intern(upd.state), i)

    n = len(ext)
    succ: list[list[int]] = [[] for _ in range(n)]
    pred: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for (u, v), t in first_edge.items():
        succ[u].append(v)
        pred[v].append((u, t))

    inf = math.inf
    live_at = [inf] * n
    heap = [(t, v) for v, t in term_time.items()]
    for t, v in heap:
        live_at[v] = t
    heapq.heapify(heap)
    while heap:
        t, v = heapq.heappop(heap)
        if t > live_at[v]:
            continue
        for u, te in pred[v]:
            cand = t if t > te else te
            if cand < live_at[u]:
                live_at[u] = cand
                heapq.heappush(heap, (cand, u))

    dead_at = [inf] * n
    comp_of = [0] * n
    for c, comp in enumerate(strongly_connected_components(n, succ)):
        for v in comp:
            comp_of[v] = c
        worst = -1
        for v in comp:
            ct = close_time.get(v, inf)
            if ct > worst:
                worst = ct
            for w in succ[v]:
                # components finish sinks-first, so outside successors are done
                if comp_of[w] != c and dead_at[w] > worst:
                    worst = dead_at[w]
        for v in comp:
            dead_at[v] = worst

    events = []
    for v in range(n):
        if live_at[v] < inf:
            events.append(Event(live_at[v], LIVE, ext[v]))
        elif dead_at[v] < inf:
            events.append(Event(dead_at[v], DEAD, ext[v]))
    events.sort(key=lambda e: (e.index, e.state, e.verdict))
    return events


def iter_prefix_status(trace: Iterable[Update]) -> Iterator[dict[int, Status]]:
    """Yield the snapshot classification after every update (small traces only)."""
    vertices: set[int] = set()
    edges: set[tuple[int, int]] = set()
    terminals: set[int] = set()
    closed: set[int] = set()
    for upd in trace:
        vertices.update(states_of(upd))
        if type(upd) is Edge:
            edges.add((upd.src, upd.dst))
        elif type(upd) is Terminal:
            terminals.add(upd.state)
        else:
            closed.add(upd.state)
        yield classify_snapshot((vertices, edges), terminals, closed)


class StatusTimeline:
    """Status of any state after any update, read off the offline oracle.

    Live and Dead are fixed by the first event naming the state; otherwise a
    state is Unknown once closed and Open before.  Audits use this to avoid
    reclassifying the whole graph after every update.
    """

    def __init__(self, trace: Iterable[Update]):
        trace = list(trace)
        self.live_at: dict[int, int] = {}
        self.dead_at: dict[int, int] = {}
        self.closed_at: dict[int, int] = {}
        for e in oracle_events(trace):
            (self.live_at if e.verdict == LIVE else self.dead_at)[e.state] = e.index
        for i, upd in enumerate(trace):
            if type(upd) is Closed:
                self.closed_at.setdefault(upd.state, i)

    def status(self, state: int, index: int) -> Status:
        at = self.live_at.get(state)
        if at is not None and at <= index:
            return Status.LIVE
        at = self.dead_at.get(state)
        if at is not None and at <= index:
            return Status.DEAD
        at = self.closed_at.get(state)
        if at is not None and at <= index:
            return Status.UNKNOWN
        return Status.OPEN
