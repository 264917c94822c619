"""Deterministic benchmark traces: basic shapes and random sparse/dense GIDs.

Random families draw from numpy's PCG64 bit generator through its raw 64-bit
output only, so a (spec, seed) pair gives the same bytes on every platform
and numpy release.  Integers in [0, n) come from the multiply-shift map
``(x * n) >> 64``; uniform floats from the top 53 bits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import Iterator

import numpy as np

from .core import Closed, Edge, Trace

BASIC = ("line", "cycle", "complete", "complete_acyclic", "bipartite")
RANDOM = ("sparse", "dense")
FAMILIES = BASIC + RANDOM
ORDERS = ("fwd", "bwd")
VARIANTS = ("dead", "unknown")

CAPS = {
    "line": 100_000,
    "cycle": 100_000,
    "complete": 1_000,
    "complete_acyclic": 1_000,
    "bipartite": 1_000,
    "sparse": 100_000,
    "dense": 10_000,
}
DEGREES = (1, 2, 3, 10)
DENSITIES = (0.01, 0.02, 0.03)
SEEDS = tuple(range(10))


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int
    order: str = "fwd"
    variant: str = "dead"
    degree: int = 0
    p: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise SpecError(f"unknown family {self.family!r}")
        if self.n < 1:
            raise SpecError("n must be at least 1")
        if self.order not in ORDERS:
            raise SpecError(f"order must be fwd or bwd, not {self.order!r}")
        if self.variant not in VARIANTS:
            raise SpecError(f"variant must be dead or unknown, not {self.variant!r}")
        if self.family in RANDOM and self.order != "fwd":
            raise SpecError("random families always visit states in order 1..n")
        if self.family == "sparse" and self.degree < 0:
            raise SpecError("degree must be nonnegative")
        if self.family == "dense" and not 0.0 <= self.p <= 1.0:
            raise SpecError("p must lie in [0, 1]")
        if not 0 <= self.seed < 2**64:
            raise SpecError("seed must be a 64-bit unsigned integer")

    @property
    def name(self) -> str:
        if self.family == "sparse":
            return f"sparse-d{self.degree}-{self.variant}-{self.n}-s{self.seed}"
        if self.family == "dense":
            return f"dense-p{self.p:g}-{self.variant}-{self.n}-s{self.seed}"
        return f"{self.family}-{self.order}-{self.variant}-{self.n}"

    def header(self) -> str:
        parts = [f"{f.name}={getattr(self, f.name)}" for f in fields(self)]
        return "gidkit generate " + " ".join(parts)


class _Stream:
    """Raw 64-bit words from PCG64, fetched in blocks."""

    def __init__(self, seed: int, block: int = 4096):
        self._bits = np.random.PCG64(seed)
        self._block = block
        self._buf: list[int] = []
        self._i = 0

    def word(self) -> int:
        if self._i == len(self._buf):
            self._buf = self._bits.random_raw(self._block).tolist()
            self._i = 0
        w = self._buf[self._i]
        self._i += 1
        return w

    def below(self, n: int) -> int:
        return (self.word() * n) >> 64

    def uniform(self) -> float:
        return (self.word() >> 11) * (1.0 / 9007199254740992.0)


def _visit(n: int, order: str) -> list[int]:
    return list(range(1, n + 1)) if order == "fwd" else list(range(n, 0, -1))


def _line(spec: GenSpec, closing: bool) -> Trace:
    n = spec.n
    tr: Trace = []
    if spec.order == "fwd":
        for i in range(1, n):
            tr += [Edge(i, i + 1), Closed(i)]
        last, first = n, 1
    else:
        for i in range(1, n):
            tr += [Edge(i + 1, i), Closed(i + 1)]
        last, first = 1, n
    if closing:
        tr.append(Edge(last, first))
    if spec.variant == "dead":
        tr.append(Closed(last))
    return tr


def _blocks(spec: GenSpec, targets) -> Trace:
    visit = _visit(spec.n, spec.order)
    tr: Trace = []
    for k, i in enumerate(visit):
        tr.extend(Edge(i, j) for j in targets(i))
        if spec.variant == "dead" or k < len(visit) - 1:
            tr.append(Closed(i))
    return tr


def _dense_targets(spec: GenSpec):
    n, p = spec.n, spec.p
    rng = _Stream(spec.seed)
    # geometric gaps over the n * (n - 1) ordered pairs of distinct states
    total = n * (n - 1)
    chosen: list[int] = []
    if p >= 1.0:
        chosen = list(range(total))
    elif p > 0.0:
        log_q = math.log1p(-p)
        k = -1
        while True:
            u = rng.uniform()
            k += 1 + int(math.log1p(-u) / log_q)
            if k >= total:
                break
            chosen.append(k)
    by_src: dict[int, list[int]] = {}
    for k in chosen:
        i, r = divmod(k, n - 1)
        j = r if r < i else r + 1
        by_src.setdefault(i + 1, []).append(j + 1)
    return lambda i: by_src.get(i, ())


def generate(spec: GenSpec) -> Trace:
    n, fam = spec.n, spec.family
    if fam == "line":
        return _line(spec, closing=False)
    if fam == "cycle":
        return _line(spec, closing=True)
    if fam == "complete":
        return _blocks(spec, lambda i: (j for j in range(1, n + 1) if j != i))
    if fam == "complete_acyclic":
        return _blocks(spec, lambda i: range(i + 1, n + 1))
    if fam == "bipartite":
        half = (n + 1) // 2
        return _blocks(spec, lambda i: range(half + 1, n + 1) if i <= half else range(1, half + 1))
    if fam == "sparse":
        rng = _Stream(spec.seed)
        return _blocks(spec, lambda i: [1 + rng.below(n) for _ in range(spec.degree)])
    return _blocks(spec, _dense_targets(spec))


def ladder(cap: int, start: int = 10) -> list[int]:
    """10, 30, 100, 300, ... up to ``cap`` inclusive."""
    out, k = [], 0
    while True:
        size = start * 10 ** (k // 2) * (3 if k % 2 else 1)
        if size > cap:
            return out
        out.append(size)
        k += 1


def suite_specs(name: str, max_n: int | None = None) -> list[GenSpec]:
    def sizes(fam):
        cap = CAPS[fam] if max_n is None else min(CAPS[fam], max_n)
        return ladder(cap)

    specs: list[GenSpec] = []
    if name == "basic":
        for fam in BASIC:
            for n in sizes(fam):
                for order in ORDERS:
                    for variant in VARIANTS:
                        specs.append(GenSpec(fam, n, order, variant))
    elif name == "random":
        for degree in DEGREES:
            for n in sizes("sparse"):
                for seed in SEEDS:
                    specs.append(GenSpec("sparse", n, degree=degree, seed=seed))
        for p in DENSITIES:
            for n in sizes("dense"):
                for seed in SEEDS:
                    specs.append(GenSpec("dense", n, p=p, seed=seed))
    else:
        raise SpecError(f"unknown suite {name!r}; choose basic or random")
    return specs


def iter_suite(name: str, max_n: int | None = None) -> Iterator[tuple[GenSpec, Trace]]:
    for spec in suite_specs(name, max_n):
        yield spec, generate(spec)


def suite(name: str, max_n: int | None = None) -> list[tuple[GenSpec, Trace]]:
    return list(iter_suite(name, max_n))
