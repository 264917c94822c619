import random

from hypothesis import given
from hypothesis import strategies as st

from gidkit.union_find import UnionFind


def test_examples():
    uf = UnionFind(6)
    assert uf.find(5) == 5
    assert uf.members(5) == [5]
    r = uf.union(1, 1)
    assert r == uf.find(1) and uf.unions == 0
    uf.union(1, 2)
    assert uf.find(1) == uf.find(2)
    uf.union(2, 3)
    assert sorted(uf.iter(uf.find(1))) == [1, 2, 3]
    assert sorted(uf.iter(3)) == [1, 2, 3]


def test_grow_and_add():
    uf = UnionFind()
    assert uf.add() == 0
    uf.grow(4)
    assert len(uf) == 4 and uf.find(3) == 3


@given(st.lists(st.tuples(st.integers(0, 19), st.integers(0, 19)), max_size=60), st.integers(0, 9))
def test_partition_matches_relabel_oracle(pairs, seed):
    uf = UnionFind(20, tie_rng=random.Random(seed))
    label = list(range(20))
    for a, b in pairs:
        r = uf.union(a, b)
        assert r == uf.find(a) == uf.find(b)
        la, lb = label[a], label[b]
        label = [la if x == lb else x for x in label]
        for v in range(20):
            members = sorted(uf.iter(v))
            assert members == [w for w in range(20) if label[w] == label[v]]
    assert sum(len(c) for c in uf.classes().values()) == 20


def test_amortized_hops():
    rng = random.Random(1)
    n = 100_000
    uf = UnionFind(n)
    for _ in range(n):
        uf.union(rng.randrange(n), rng.randrange(n))
    for _ in range(n):
        uf.find(rng.randrange(n))
    assert uf.hops / uf.finds <= 4
