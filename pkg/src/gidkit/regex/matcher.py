"""Reference membership test that never looks at derivatives.

``ends(r, i)`` is the set of positions j such that ``s[i:j]`` matches r,
computed by structural recursion with memoisation.  Complement is taken
relative to the positions i..len(s).
"""
from __future__ import annotations

from functools import lru_cache

from .syntax import AND, CAT, EPS, NOT, OR, PRED, STAR, Regex


def matches(r: Regex, s: str) -> bool:
    n = len(s)

    @lru_cache(maxsize=None)
    def ends(node: Regex, i: int) -> frozenset:
        k = node.kind
        if k == PRED:
            return frozenset((i + 1,)) if i < n and s[i] in node.args[0] else frozenset()
        if k == EPS:
            return frozenset((i,))
        if k == CAT:
            a, b = node.args
            out = set()
            for j in ends(a, i):
                out |= ends(b, j)
            return frozenset(out)
        if k == STAR:
            seen = {i}
            todo = [i]
            while todo:
                j = todo.pop()
                for e in ends(node.args[0], j):
                    if e not in seen:
                        seen.add(e)
                        todo.append(e)
            return frozenset(seen)
        if k == OR:
            out = set()
            for c in node.args:
                out |= ends(c, i)
            return frozenset(out)
        if k == AND:
            it = iter(node.args)
            out = set(ends(next(it), i))
            for c in it:
                out &= ends(c, i)
            return frozenset(out)
        if k == NOT:
            return frozenset(range(i, n + 1)) - ends(node.args[0], i)
        raise TypeError(f"unknown regex kind {k!r}")

    return n in ends(r, 0)
