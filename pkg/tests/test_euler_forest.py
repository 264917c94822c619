import random

import pytest

from gidkit.euler_forest import EulerForest, ForestError


def test_basic_link_cut():
    ef = EulerForest()
    ef.ensure_vertex(1)
    ef.ensure_vertex(1)
    assert ef.connected(1, 1)
    assert ef.tour(1) == [1]
    ef.add(1, 2)
    assert ef.connected(1, 2)
    ef.add(2, 3)
    assert ef.connected(1, 3)
    with pytest.raises(ForestError):
        ef.add(1, 3)
    with pytest.raises(ForestError):
        ef.add(1, 2)
    ef.remove(2, 3)
    assert ef.connected(1, 2) and not ef.connected(1, 3)
    with pytest.raises(ForestError):
        ef.remove(2, 3)
    with pytest.raises(ForestError):
        ef.add(4, 4)
    ef.remove(2, 1)  # either orientation names the edge
    assert not ef.connected(1, 2)
    assert ef.audit() == []


def test_many_singletons():
    ef = EulerForest()
    for v in range(10_000):
        ef.ensure_vertex(v)
    assert len(ef.components()) == 10_000


def _closed_walk(tour):
    """Read cyclically, arcs must chain and vertex nodes sit where the walk stands."""
    arcs = [x for x in tour if isinstance(x, tuple)]
    if not arcs:
        return len(tour) == 1
    for a, b in zip(arcs, arcs[1:] + arcs[:1]):
        if a[1] != b[0]:
            return False
    return True


def test_tour_shape():
    ef = EulerForest()
    for u, v in [(1, 2), (2, 3), (2, 4), (5, 1)]:
        ef.add(u, v)
    tour = ef.tour(3)
    k = 5
    assert len(tour) == k + 2 * (k - 1)
    assert sorted(x for x in tour if not isinstance(x, tuple)) == [1, 2, 3, 4, 5]
    assert _closed_walk(tour)


def _components(vertices, edges):
    adj = {v: [] for v in vertices}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    comp = {}
    for s in vertices:
        if s in comp:
            continue
        comp[s] = s
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp[y] = s
                    stack.append(y)
    return comp


def run_script(seed, n=300, ops=10_000, audit_every=500):
    """Random link/cut/connected script checked against recomputed components."""
    rng = random.Random(seed)
    ef = EulerForest()
    verts = list(range(n))
    for v in verts:
        ef.ensure_vertex(v)
    edges = set()
    comp = _components(verts, edges)
    mismatches = 0
    for step in range(ops):
        r = rng.random()
        if r < 0.4:
            u, v = rng.sample(verts, 2)
            if comp[u] != comp[v]:
                ef.add(u, v)
                edges.add((min(u, v), max(u, v)))
                comp = _components(verts, edges)
        elif r < 0.6 and edges:
            e = rng.choice(sorted(edges))
            ef.remove(*e)
            edges.discard(e)
            comp = _components(verts, edges)
        # one connectivity probe after every operation
        u, v = rng.choice(verts), rng.choice(verts)
        mismatches += ef.connected(u, v) != (comp[u] == comp[v])
        if step % audit_every == 0:
            assert ef.audit() == []
            for c in ef.components():
                v = next(iter(c))
                tour = ef.tour(v)
                assert len(tour) == len(c) + 2 * (len(c) - 1)
                assert _closed_walk(tour)
    assert set(ef.edges()) == edges
    return mismatches


def test_random_script_small():
    assert run_script(0, n=30, ops=2000, audit_every=1) == 0
