import random

import pytest
from hypothesis import given, settings

from gidkit.core import (
    Closed,
    Edge,
    Event,
    Status,
    Terminal,
    TraceError,
    classify_snapshot,
    denotation,
    format_events,
    iter_prefix_status,
    oracle_events,
    oracle_events_replay,
    parse_trace,
    serialize_trace,
    strongly_connected_components,
    validate,
)

from conftest import SMALL, random_trace, traces


def test_parse_examples():
    assert parse_trace("E 1 2\nT 2") == [Edge(1, 2), Terminal(2)]
    assert parse_trace("# comment\nC 4") == [Closed(4)]
    assert parse_trace("\n  \nE 0 4294967295\n") == [Edge(0, 2**32 - 1)]


@pytest.mark.parametrize(
    "text, line",
    [("E 1", 1), ("T 1\nQ 2", 2), ("C -1", 1), ("C x", 1), ("E 1 4294967296", 1), ("T 1 2", 1)],
)
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(TraceError) as info:
        parse_trace(text)
    assert info.value.lineno == line
    assert f"line {line}" in str(info.value)


@given(traces())
def test_serialize_roundtrip(trace):
    assert parse_trace(serialize_trace(trace, header="a\nb")) == trace


def test_validate():
    bad = validate([Edge(1, 2), Closed(1), Edge(1, 3)])
    assert not bad.ok and bad.violation.index == 2
    assert validate([Terminal(1), Closed(1), Terminal(1)]).violation.index == 2
    assert validate(SMALL).ok
    twice = validate([Closed(1), Closed(1)])
    assert twice.ok and len(twice.warnings) == 1
    # edges into a closed state are fine
    assert validate([Closed(2), Edge(1, 2)]).ok


def test_denotation():
    assert denotation(SMALL) == ({1, 2, 3, 4, 5}, {(1, 2), (1, 3), (4, 3), (4, 5)})
    assert denotation([]) == (set(), set())
    assert denotation([Terminal(7)]) == ({7}, set())


def test_classify_snapshot_examples():
    V, E = denotation(SMALL)
    got = classify_snapshot((V, E), {2}, {4, 5})
    S = Status
    assert got == {1: S.LIVE, 2: S.LIVE, 3: S.OPEN, 4: S.UNKNOWN, 5: S.DEAD}
    assert classify_snapshot(({1}, set()), set(), set()) == {1: S.OPEN}
    assert classify_snapshot(({1, 2}, {(1, 2), (2, 1)}), set(), {1, 2}) == {1: S.DEAD, 2: S.DEAD}
    # a closed terminal is live, not dead
    assert classify_snapshot(({1}, set()), {1}, {1}) == {1: S.LIVE}


def test_oracle_examples():
    want = [Event(2, "Live", 1), Event(2, "Live", 2), Event(6, "Dead", 5)]
    assert oracle_events(SMALL) == want
    assert oracle_events_replay(SMALL) == want
    assert oracle_events([Terminal(3)]) == [Event(0, "Live", 3)]
    line = [Edge(2, 1), Closed(2), Edge(3, 2), Closed(3), Closed(1)]
    assert oracle_events(line) == [Event(4, "Dead", 1), Event(4, "Dead", 2), Event(4, "Dead", 3)]
    assert format_events(want, verbose=True) == "@2 Live 1\n@2 Live 2\n@6 Dead 5\n"
    assert format_events(want) == "Live 1\nLive 2\nDead 5\n"


@settings(max_examples=300)
@given(traces(max_states=7, max_len=30))
def test_offline_oracle_matches_prefix_replay(trace):
    assert oracle_events(trace) == oracle_events_replay(trace)


def test_offline_oracle_matches_replay_larger():
    rng = random.Random(11)
    for _ in range(60):
        trace = random_trace(rng, rng.randint(5, 30), rng.randint(20, 120))
        assert oracle_events(trace) == oracle_events_replay(trace)


def test_oracle_tolerates_duplicates_and_self_loops():
    trace = [Edge(1, 1), Edge(1, 2), Edge(1, 2), Closed(1), Closed(1), Terminal(3), Terminal(3), Closed(2)]
    assert oracle_events(trace) == oracle_events_replay(trace)
    assert oracle_events(trace) == [Event(5, "Live", 3), Event(7, "Dead", 1), Event(7, "Dead", 2)]


@given(traces(max_states=6, max_len=25))
def test_status_properties(trace):
    """Monotone Live/Dead and dead never turns live under extension."""
    live, dead = set(), set()
    for snap in iter_prefix_status(trace):
        for v, s in snap.items():
            if v in live:
                assert s is Status.LIVE
            if v in dead:
                assert s is Status.DEAD
        live |= {v for v, s in snap.items() if s is Status.LIVE}
        dead |= {v for v, s in snap.items() if s is Status.DEAD}
    assert not live & dead


@given(traces(max_states=6, max_len=25))
def test_events_once_per_state(trace):
    seen = set()
    for e in oracle_events(trace):
        assert (e.state, e.verdict) not in seen
        seen.add((e.state, e.verdict))


def _reach(n, succ):
    out = []
    for s in range(n):
        seen, stack = {s}, [s]
        while stack:
            for w in succ[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append(seen)
    return out


def test_tarjan_against_mutual_reachability():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(1, 25)
        succ = [[rng.randrange(n) for _ in range(rng.randint(0, 3))] for _ in range(n)]
        reach = _reach(n, succ)
        want = {frozenset(w for w in range(n) if w in reach[v] and v in reach[w]) for v in range(n)}
        got = strongly_connected_components(n, succ)
        assert {frozenset(c) for c in got} == want
        # sinks first: no edge from an earlier component into a later one
        rank = {v: i for i, c in enumerate(got) for v in c}
        assert all(rank[w] <= rank[v] for v in range(n) for w in succ[v])
