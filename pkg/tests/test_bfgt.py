import random

import pytest

from gidkit.core import Closed, Edge, oracle_events
from gidkit.engines import make_engine, replay
from gidkit.generators import GenSpec, generate

from conftest import closed_workload, partition_of, scc_partition


def test_compatible_edge_needs_no_search():
    eng = make_engine("bfgt", audit=True)
    for upd in [Edge(1, 2), Closed(2), Closed(1)]:
        eng.on_update(upd)
    assert eng.counters().back_visits == 0


def test_two_cycle_merges():
    eng = make_engine("bfgt", audit=True)
    events = []
    for upd in [Edge(1, 2), Edge(2, 1), Closed(1), Closed(2)]:
        events.extend(eng.on_update(upd))
    assert eng.uf.same(eng.intern(1), eng.intern(2))
    assert [(e.verdict, e.state) for e in events] == [("Dead", 1), ("Dead", 2)]


@pytest.mark.parametrize("seed", range(10))
def test_partition_matches_tarjan(seed):
    rng = random.Random(seed)
    n = rng.randint(20, 300)
    trace = closed_workload(rng, n, rng.randint(n, 2000))
    eng = make_engine("bfgt", audit=seed < 3)
    replay(eng, trace)
    assert partition_of(eng, range(n)) == scc_partition(trace)


def test_order_compatible_with_open_targets():
    rng = random.Random(4)
    for _ in range(20):
        trace = closed_workload(rng, 40, 120)
        # leave a handful of states open by dropping their closes
        keep_open = set(rng.sample(range(40), 5))
        trace = [u for u in trace if not (type(u) is Closed and u.state in keep_open)]
        eng = make_engine("bfgt", audit=True)
        for upd in trace:
            eng.on_update(upd)
        assert eng.audit_problems() == []


def test_search_budget_envelope():
    for spec in (GenSpec("sparse", 3000, degree=3, seed=1), GenSpec("complete", 150)):
        c = replay(make_engine("bfgt"), generate(spec)).counters
        assert c.back_visits <= 4 * c.m ** 1.5
        assert c.merges <= c.m


def test_agrees_with_oracle_on_sparse():
    for seed in range(3):
        trace = generate(GenSpec("sparse", 1000, degree=3, seed=seed))
        assert replay(make_engine("bfgt"), trace).events == oracle_events(trace)
