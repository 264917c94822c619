"""Incremental emptiness check: explore derivatives, let an engine classify.

Each regex discovered becomes a GID state.  A nullable regex is terminal.
Expanding a regex adds one edge per transition of its derivative and then
closes it, since the symbolic derivative lists every successor at once.
The root is non-empty as soon as the engine calls it live and empty as soon
as the engine calls it dead.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from ..core import Closed, Edge, Status, Terminal, Update
from ..engines import Engine, make_engine
from .charset import CharSet
from .derivative import DerivativeCap, Deriver, expand
from .syntax import Builder, Regex

DEFAULT_BUDGET = 10_000


@dataclass
class Outcome:
    verdict: str  # "LIVE" | "DEAD" | "BUDGET"
    expansions: int
    states: int
    witness: str | None = None
    reason: str = ""
    trace: list[Update] = field(default_factory=list, repr=False)

    def line(self) -> str:
        if self.verdict == "LIVE":
            return f"LIVE {self.witness}"
        if self.verdict == "DEAD":
            return "DEAD"
        return f"BUDGET {self.expansions}"


def decide_emptiness(
    r: Regex,
    builder: Builder,
    engine: Engine | str = "lazy",
    budget: int = DEFAULT_BUDGET,
    deriver: Deriver | None = None,
) -> Outcome:
    if budget < 1:
        raise ValueError("budget must be at least 1")
    if isinstance(engine, str):
        engine = make_engine(engine)
    deriver = deriver or Deriver(builder)
    ids: dict[int, int] = {}
    regexes: list[Regex] = []
    moves: dict[int, list[tuple[CharSet, int]]] = {}
    trace: list[Update] = []
    queue: deque[int] = deque()

    def feed(update: Update) -> None:
        trace.append(update)
        engine.on_update(update)

    def discover(x: Regex) -> int:
        sid = ids.get(x.id)
        if sid is None:
            sid = ids[x.id] = len(regexes)
            regexes.append(x)
            queue.append(sid)
            if x.nullable:
                feed(Terminal(sid))
        return sid

    def settle(expansions: int) -> Outcome | None:
        try:
            status = engine.status(0)
        except KeyError:  # no update has mentioned the root yet
            return None
        if status == Status.LIVE:
            return Outcome("LIVE", expansions, len(regexes), _witness(moves, regexes), trace=trace)
        if status == Status.DEAD:
            return Outcome("DEAD", expansions, len(regexes), trace=trace)
        return None

    discover(r)
    done = settle(0)
    if done:
        return done
    expansions = 0
    while queue:
        if expansions >= budget:
            return Outcome("BUDGET", expansions, len(regexes), reason="expansion budget spent", trace=trace)
        sid = queue.popleft()
        try:
            transitions = expand(deriver, regexes[sid])
        except DerivativeCap as exc:
            return Outcome("BUDGET", expansions, len(regexes), reason=str(exc), trace=trace)
        out = moves[sid] = []
        for cond, target in transitions:
            tid = discover(target)
            out.append((cond, tid))
            feed(Edge(sid, tid))
        feed(Closed(sid))
        expansions += 1
        done = settle(expansions)
        if done:
            return done
    raise AssertionError("every state is closed yet the root is undecided")


def _witness(moves: dict[int, list[tuple[CharSet, int]]], regexes: list[Regex]) -> str:
    """Shortest recorded path from the root to a nullable state."""
    prev: dict[int, tuple[int, str]] = {0: (-1, "")}
    queue = deque([0])
    while queue:
        s = queue.popleft()
        if regexes[s].nullable:
            chars = []
            while s:
                s, ch = prev[s]
                chars.append(ch)
            return "".join(reversed(chars))
        for cond, t in moves.get(s, ()):
            if t not in prev:
                prev[t] = (s, cond.min_char())
                queue.append(t)
    raise AssertionError("live root without a recorded path to a nullable state")
