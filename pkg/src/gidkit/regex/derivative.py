"""Symbolic derivatives as if-then-else trees over character predicates.

A tree is either a ``Leaf`` holding a regex or a ``Branch(cond, yes, no)``.
Combining trees distributes the regex operator over both sides' branches;
a branch whose accumulated condition (the conjunction of the tests taken on
the way down) is empty is cut, and a branch whose two sides are the same leaf
collapses into that leaf.
"""
from __future__ import annotations

from typing import Callable, NamedTuple, Union

from .charset import CharSet
from .syntax import AND, CAT, EPS, NOT, OR, PRED, STAR, Builder, Regex

DEFAULT_LEAF_CAP = 10_000


class DerivativeCap(RuntimeError):
    """The transition tree grew past the configured leaf budget."""


class Leaf(NamedTuple):
    regex: Regex


class Branch(NamedTuple):
    cond: CharSet
    yes: "Tree"
    no: "Tree"


Tree = Union[Leaf, Branch]


def leaves(t: Tree) -> list[Regex]:
    out, stack = [], [t]
    while stack:
        t = stack.pop()
        if type(t) is Leaf:
            out.append(t.regex)
        else:
            stack.append(t.no)
            stack.append(t.yes)
    return out


def paths(t: Tree, full: CharSet) -> list[tuple[CharSet, Regex]]:
    """(accumulated condition, leaf) for every leaf, left to right."""
    out = []
    stack = [(t, full)]
    while stack:
        t, cond = stack.pop()
        if type(t) is Leaf:
            out.append((cond, t.regex))
        else:
            stack.append((t.no, cond - t.cond))
            stack.append((t.yes, cond & t.cond))
    return out


class Deriver:
    """Computes and caches the derivative tree of every regex of a builder."""

    def __init__(self, builder: Builder, leaf_cap: int = DEFAULT_LEAF_CAP):
        self.b = builder
        self.leaf_cap = leaf_cap
        self._cache: dict[int, Tree] = {}
        self._full = CharSet.full(builder.width)

    # -- tree combinators ----------------------------------------------------

    def _branch(self, cond: CharSet, yes: Tree, no: Tree) -> Tree:
        if type(yes) is Leaf and type(no) is Leaf and yes.regex is no.regex:
            return yes
        return Branch(cond, yes, no)

    def _map(self, t: Tree, f: Callable[[Regex], Regex]) -> Tree:
        if type(t) is Leaf:
            return Leaf(f(t.regex))
        return self._branch(t.cond, self._map(t.yes, f), self._map(t.no, f))

    def _zip(self, s: Tree, t: Tree, f: Callable[[Regex, Regex], Regex], ctx: CharSet) -> Tree:
        """Product of two trees under accumulated condition ``ctx``."""
        if type(s) is Branch:
            pos, neg = ctx & s.cond, ctx - s.cond
            if not pos:
                return self._zip(s.no, t, f, neg)
            if not neg:
                return self._zip(s.yes, t, f, pos)
            return self._branch(s.cond, self._zip(s.yes, t, f, pos), self._zip(s.no, t, f, neg))
        if type(t) is Branch:
            pos, neg = ctx & t.cond, ctx - t.cond
            if not pos:
                return self._zip(s, t.no, f, neg)
            if not neg:
                return self._zip(s, t.yes, f, pos)
            return self._branch(t.cond, self._zip(s, t.yes, f, pos), self._zip(s, t.no, f, neg))
        return Leaf(f(s.regex, t.regex))

    def union(self, s: Tree, t: Tree) -> Tree:
        return self._zip(s, t, self.b.alt, self._full)

    def inter(self, s: Tree, t: Tree) -> Tree:
        return self._zip(s, t, self.b.inter, self._full)

    def complement(self, t: Tree) -> Tree:
        return self._map(t, self.b.neg)

    def then(self, t: Tree, r: Regex) -> Tree:
        return self._map(t, lambda x: self.b.cat(x, r))

    # -- derivative ----------------------------------------------------------

    def derive(self, r: Regex) -> Tree:
        t = self._cache.get(r.id)
        if t is None:
            t = self._derive(r)
            if len(leaves(t)) > self.leaf_cap:
                raise DerivativeCap(f"derivative of {r} has more than {self.leaf_cap} leaves")
            self._cache[r.id] = t
        return t

    def _derive(self, r: Regex) -> Tree:
        b = self.b
        k = r.kind
        if k == EPS:
            return Leaf(b.bottom)
        if k == PRED:
            cs = r.args[0]
            if not cs:
                return Leaf(b.bottom)
            if cs.is_full():
                return Leaf(b.eps)
            return Branch(cs, Leaf(b.eps), Leaf(b.bottom))
        if k == STAR:
            return self.then(self.derive(r.args[0]), r)
        if k == CAT:
            head, tail = r.args
            t = self.then(self.derive(head), tail)
            if head.nullable:
                t = self.union(t, self.derive(tail))
            return t
        if k == NOT:
            return self.complement(self.derive(r.args[0]))
        trees = [self.derive(c) for c in r.args]
        op = self.union if k == OR else self.inter
        acc = trees[0]
        for t in trees[1:]:
            acc = op(acc, t)
        return acc


def expand(deriver: Deriver, r: Regex) -> list[tuple[CharSet, Regex]]:
    """Satisfiable transitions of ``r`` with duplicate targets merged.

    Transitions into the empty regex are dropped.  Order follows the first
    appearance of each target in a left-to-right walk of the tree.
    """
    merged: dict[int, list] = {}
    for cond, target in paths(deriver.derive(r), deriver._full):
        if not cond or target is deriver.b.bottom:
            continue
        slot = merged.get(target.id)
        if slot is None:
            merged[target.id] = [cond, target]
        else:
            slot[0] = slot[0] | cond
    return [(c, t) for c, t in merged.values()]
