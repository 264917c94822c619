import sys
import random

import pytest
from hypothesis import strategies as st

from gidkit.core import Closed, Edge, Terminal

SMALL = [Edge(1, 2), Edge(1, 3), Terminal(2), Edge(4, 3), Edge(4, 5), Closed(4), Closed(5)]


@pytest.fixture
def small_trace():
    return list(SMALL)


def random_trace(rng: random.Random, n: int, steps: int, p_term: float = 0.05, p_close: float = 0.3):
    """A valid trace over states 0..n-1; closed states never get edges or labels."""
    closed = set()
    out = []
    for _ in range(steps):
        opened = [s for s in range(n) if s not in closed]
        r = rng.random()
        if not opened:
            break
        if r < p_term:
            out.append(Terminal(rng.choice(opened)))
        elif r < p_term + p_close:
            s = rng.choice(opened)
            closed.add(s)
            out.append(Closed(s))
        else:
            out.append(Edge(rng.choice(opened), rng.randrange(n)))
    # sometimes close everything so dead verdicts are exercised
    if rng.random() < 0.5:
        out.extend(Closed(s) for s in range(n) if s not in closed)
    return out


@st.composite
def traces(draw, max_states=8, max_len=40):
    n = draw(st.integers(1, max_states))
    seed = draw(st.integers(0, 2**32 - 1))
    steps = draw(st.integers(0, max_len))
    p_term = draw(st.sampled_from([0.0, 0.03, 0.1]))
    p_close = draw(st.sampled_from([0.15, 0.3, 0.5]))
    return random_trace(random.Random(seed), n, steps, p_term, p_close)


def closed_workload(rng: random.Random, n: int, m: int, local: float = 0.7):
    """Every state eventually closed, no terminals, m edges.

    Most edges stay near their source so cycles of all sizes appear.
    """
    out_edges = {s: [] for s in range(n)}
    for _ in range(m):
        u = rng.randrange(n)
        if rng.random() < local:
            v = (u + rng.randint(-5, 5)) % n
        else:
            v = rng.randrange(n)
        out_edges[u].append(v)
    order = list(range(n))
    rng.shuffle(order)
    trace = []
    for u in order:
        trace.extend(Edge(u, v) for v in out_edges[u])
        trace.append(Closed(u))
    return trace


def partition_of(engine, states):
    find = engine.uf.find
    groups = {}
    for s in states:
        groups.setdefault(find(engine.intern(s)), set()).add(s)
    return {frozenset(g) for g in groups.values()}


def scc_partition(trace):
    from gidkit.core import denotation, strongly_connected_components

    V, E = denotation(trace)
    ids = {s: i for i, s in enumerate(sorted(V))}
    back = sorted(V)
    succ = [[] for _ in V]
    for u, v in E:
        succ[ids[u]].append(ids[v])
    return {frozenset(back[i] for i in c) for c in strongly_connected_components(len(V), succ)}


def pytest_terminal_summary(terminalreporter):
    mod = next((m for k, m in sys.modules.items() if k.rpartition(".")[2] == "test_acceptance"), None)
    lines = mod.summary_lines() if mod is not None else []
    if lines:
        terminalreporter.section("acceptance")
        for line in lines:
            terminalreporter.write_line(line)
