"""Extended regexes (with intersection and complement), hash-consed.

All construction goes through a ``Builder``, whose smart constructors apply
a fixed set of normalisation rules.  Two regexes that normalise to the same
structure are the same Python object, so identity doubles as equality and
``node.id`` can serve as a graph state id.

Rules applied on construction:

* ``R & [] = []``, ``R | [] = R``, ``R . [] = [] . R = []``
* ``R & R = R``, ``R | R = R``; ``|`` and ``&`` are flattened, sorted, deduplicated
* ``~~R = R``, ``~(A | B) = ~A & ~B``
* ``() . R = R . () = R``; concatenation is kept right-nested
* ``(R*)* = R*``, ``()* = []* = ()``
* ``() & R`` is ``()`` when every ``R`` is nullable and ``[]`` otherwise
* ``R & ~[] = R``, ``R | ~[] = ~[]``
* predicates inside one ``|`` (or one ``&``) are merged into a single predicate
"""
from __future__ import annotations

from .charset import WIDTH, CharSet

PRED, EPS, CAT, STAR, OR, AND, NOT = "pred", "eps", "cat", "star", "or", "and", "not"


class Regex:
    __slots__ = ("kind", "args", "id", "nullable", "_hash", "__weakref__")

    def __init__(self, kind: str, args: tuple, uid: int, nullable: bool):
        self.kind = kind
        self.args = args
        self.id = uid
        self.nullable = nullable
        self._hash = hash((kind, uid))

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Regex") -> bool:
        return self.id < other.id

    def __repr__(self) -> str:
        return f"Regex({self})"

    def __str__(self) -> str:
        return show(self)


_PREC = {OR: 1, AND: 2, CAT: 3, NOT: 4, STAR: 5, PRED: 6, EPS: 6}


def show(r: Regex, outer: int = 0) -> str:
    k = r.kind
    if k == PRED:
        s = r.args[0].show()
    elif k == EPS:
        s = "()"
    elif k == STAR:
        s = show(r.args[0], _PREC[STAR] + 1) + "*"
    elif k == NOT:
        s = "~" + show(r.args[0], _PREC[NOT])
    elif k == CAT:
        a, b = r.args
        # collapse runs of one repeated atom into a {k} suffix
        n = 1
        while b.kind == CAT and b.args[0] is a:
            n += 1
            b = b.args[1]
        if b is a:
            n += 1
            s = f"{show(a, _PREC[STAR] + 1)}{{{n}}}"
        elif n > 1:
            s = f"{show(a, _PREC[STAR] + 1)}{{{n}}}{show(b, _PREC[CAT])}"
        else:
            s = show(a, _PREC[CAT]) + show(b, _PREC[CAT])
    else:
        sep = "|" if k == OR else "&"
        s = sep.join(show(c, _PREC[k] + 1) for c in r.args)
    return f"({s})" if _PREC[k] < outer else s


class Builder:
    """Interning factory for regexes over a ``width``-code-point alphabet."""

    def __init__(self, width: int = WIDTH):
        self.width = width
        self._table: dict[tuple, Regex] = {}
        self._nodes: list[Regex] = []
        self.bottom = self.pred(CharSet.empty(width))
        self.top = self.pred(CharSet.full(width))
        self.eps = self._make(EPS, (), True)
        self.anything = self.neg(self.bottom)  # ~[] matches every string

    def __len__(self) -> int:
        return len(self._nodes)

    def _make(self, kind: str, args: tuple, nullable: bool) -> Regex:
        key = (kind,) + tuple(a.id if isinstance(a, Regex) else a for a in args)
        node = self._table.get(key)
        if node is None:
            node = Regex(kind, args, len(self._nodes), nullable)
            self._table[key] = node
            self._nodes.append(node)
        return node

    # -- smart constructors --------------------------------------------------

    def pred(self, cs: CharSet) -> Regex:
        if cs.width != self.width:
            raise ValueError("predicate width does not match the builder")
        return self._make(PRED, (cs,), False)

    def chars(self, s: str) -> Regex:
        return self.pred(CharSet.of(s, self.width))

    def literal(self, s: str) -> Regex:
        out = self.eps
        for ch in reversed(s):
            out = self.cat(self.chars(ch), out)
        return out

    def is_bottom(self, r: Regex) -> bool:
        return r is self.bottom

    def cat(self, a: Regex, b: Regex) -> Regex:
        if a is self.bottom or b is self.bottom:
            return self.bottom
        if a is self.eps:
            return b
        if b is self.eps:
            return a
        if a.kind == CAT:
            return self.cat(a.args[0], self.cat(a.args[1], b))
        return self._make(CAT, (a, b), a.nullable and b.nullable)

    def seq(self, *parts: Regex) -> Regex:
        out = self.eps
        for p in reversed(parts):
            out = self.cat(p, out)
        return out

    def power(self, r: Regex, k: int) -> Regex:
        if k < 0:
            raise ValueError("negative repetition count")
        out = self.eps
        for _ in range(k):
            out = self.cat(r, out)
        return out

    def star(self, a: Regex) -> Regex:
        if a.kind == STAR:
            return a
        if a is self.eps or a is self.bottom:
            return self.eps
        return self._make(STAR, (a,), True)

    def neg(self, a: Regex) -> Regex:
        if a.kind == NOT:
            return a.args[0]
        if a.kind == OR:
            return self.inter(*(self.neg(c) for c in a.args))
        return self._make(NOT, (a,), not a.nullable)

    def alt(self, *rs: Regex) -> Regex:
        items: set[Regex] = set()
        cs = CharSet.empty(self.width)
        for r in rs:
            for c in r.args if r.kind == OR else (r,):
                if c.kind == PRED:
                    cs = cs | c.args[0]
                elif c is self.anything:
                    return self.anything
                else:
                    items.add(c)
        if cs:
            items.add(self.pred(cs))
        if not items:
            return self.bottom
        if len(items) == 1:
            return next(iter(items))
        ordered = tuple(sorted(items))
        return self._make(OR, ordered, any(c.nullable for c in ordered))

    def inter(self, *rs: Regex) -> Regex:
        items: set[Regex] = set()
        cs = None
        has_eps = False
        for r in rs:
            for c in r.args if r.kind == AND else (r,):
                if c is self.bottom:
                    return self.bottom
                if c is self.anything:
                    continue
                if c is self.eps:
                    has_eps = True
                elif c.kind == PRED:
                    cs = c.args[0] if cs is None else cs & c.args[0]
                else:
                    items.add(c)
        if cs is not None:
            if not cs:
                return self.bottom
            items.add(self.pred(cs))
        if has_eps:
            return self.eps if all(c.nullable for c in items) else self.bottom
        if not items:
            return self.anything
        if len(items) == 1:
            return next(iter(items))
        ordered = tuple(sorted(items))
        return self._make(AND, ordered, all(c.nullable for c in ordered))
