"""Differential comparison and timed benchmarking of engines.

``compare`` replays one trace on several engines and reports the first update
where their event streams part ways.  ``bench`` times every (benchmark, engine)
pair under a wall-clock timeout, drops benchmarks on which every engine was
trivially fast, and writes CSV rows in suite order.
"""
from __future__ import annotations

import csv
import gc
import io
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import Event, Trace
from .engines import ENGINE_NAMES, CounterSet, Engine, EngineError, make_engine, replay
from .generators import GenSpec, SpecError, generate, ladder, suite_specs

CSV_HEADER = ("benchmark", "family", "engine", "updates", "events", "time_ns", "outcome")
DEFAULT_TIMEOUT = 60.0
TRIVIAL_NS = 10_000_000  # 10 ms
WORKERS_ENV = "GIDKIT_WORKERS"

# reverse-order scaling suites: a line or cycle whose states arrive sink first
SCALING = {"line-rev": "line", "cycle-rev": "cycle"}
SCALING_SIZES = tuple(n for n in ladder(100_000) if n >= 1_000)


# ---------------------------------------------------------------------------
# compare


@dataclass
class Divergence:
    index: int  # update index of the first disagreement
    verdicts: dict[str, list[str]]  # engine -> events emitted at that update
    failed: dict[str, str] = field(default_factory=dict)  # engine -> error text

    def report(self) -> str:
        lines = [f"divergence at update {self.index}"]
        for name, got in self.verdicts.items():
            shown = ", ".join(got) if got else "(none)"
            lines.append(f"  {name}: {shown}")
        for name, why in self.failed.items():
            lines.append(f"  {name} failed: {why}")
        return "\n".join(lines)


def _at(events: Sequence[Event], index: int) -> list[str]:
    return [f"{e.verdict} {e.state}" for e in events if e.index == index]


def _first_gap(a: Sequence[Event], b: Sequence[Event]) -> int | None:
    for x, y in zip(a, b):
        if x != y:
            return min(x.index, y.index)
    if len(a) != len(b):
        longer = a if len(a) > len(b) else b
        return longer[min(len(a), len(b))].index
    return None


def compare(engines: Iterable[str | Engine], trace: Trace) -> Divergence | None:
    """Replay ``trace`` on every engine; None when all event streams agree."""
    runs: dict[str, list[Event]] = {}
    failed: dict[str, tuple[int, str]] = {}
    for eng in engines:
        if isinstance(eng, str):
            name, eng = eng, make_engine(eng)
        else:
            name = getattr(eng, "name", type(eng).__name__)
        base, k = name, 1
        while name in runs or name in failed:
            k += 1
            name = f"{base}#{k}"
        try:
            runs[name] = replay(eng, trace).events
        except EngineError as exc:
            failed[name] = (exc.index, str(exc.__cause__ or exc))
    if len(runs) + len(failed) < 2:
        raise ValueError("compare needs at least two engines")

    gap = None
    names = list(runs)
    for other in names[1:]:
        i = _first_gap(runs[names[0]], runs[other])
        if i is not None and (gap is None or i < gap):
            gap = i
    for index, _ in failed.values():
        if gap is None or index < gap:
            gap = index
    if gap is None:
        return None
    return Divergence(
        gap,
        {n: _at(ev, gap) for n, ev in runs.items()},
        {n: f"update {i}: {why}" for n, (i, why) in failed.items()},
    )


# ---------------------------------------------------------------------------
# bench


@dataclass
class BenchRecord:
    benchmark: str
    family: str
    engine: str
    updates: int
    events: int
    time_ns: int
    outcome: str  # "ok" | "timeout"
    counters: CounterSet | None = None

    def row(self) -> tuple:
        return (self.benchmark, self.family, self.engine, self.updates, self.events, self.time_ns, self.outcome)


def bench_specs(name: str, max_n: int | None = None) -> list[GenSpec]:
    if name in SCALING:
        sizes = [n for n in SCALING_SIZES if max_n is None or n <= max_n]
        return [GenSpec(SCALING[name], n, "bwd", "dead") for n in sizes]
    return suite_specs(name, max_n)


SUITES = ("basic", "random") + tuple(SCALING)


def run_one(spec: GenSpec, engine: str, timeout: float | None = DEFAULT_TIMEOUT, trace: Trace | None = None) -> BenchRecord:
    trace = generate(spec) if trace is None else trace
    # cyclic GC pauses grow with the heap and would blur the scaling curves
    gc.collect()
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        res = replay(make_engine(engine), trace, timeout)
    finally:
        if was_enabled:
            gc.enable()
    return BenchRecord(spec.name, spec.family, engine, len(trace), len(res.events), res.wall_ns, res.outcome, res.counters)


def _job(args) -> BenchRecord:
    spec, engine, timeout = args
    return run_one(spec, engine, timeout)


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def bench(
    specs: Iterable[GenSpec],
    engines: Sequence[str] = ENGINE_NAMES,
    timeout: float = DEFAULT_TIMEOUT,
    workers: int | None = None,
    keep_trivial: bool = False,
) -> list[BenchRecord]:
    """Time every engine on every spec, in spec order.

    Benchmarks where every engine finished ok in under 10 ms are dropped
    unless ``keep_trivial``.
    """
    specs = list(specs)
    workers = worker_count() if workers is None else max(1, workers)
    jobs = [(s, e, timeout) for s in specs for e in engines]
    if workers == 1:
        records = []
        for spec in specs:
            trace = generate(spec)  # share one trace across engines
            records.extend(run_one(spec, e, timeout, trace) for e in engines)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_job, jobs))  # map keeps submission order

    if keep_trivial:
        return records
    out = []
    k = len(engines)
    for i in range(0, len(records), k):
        group = records[i:i + k]
        if all(r.outcome == "ok" and r.time_ns < TRIVIAL_NS for r in group):
            continue
        out.extend(group)
    return out


def write_csv(records: Iterable[BenchRecord], fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.row())


def to_csv(records: Iterable[BenchRecord]) -> str:
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()


__all__ = [
    "BenchRecord",
    "CSV_HEADER",
    "DEFAULT_TIMEOUT",
    "Divergence",
    "SCALING_SIZES",
    "SUITES",
    "SpecError",
    "TRIVIAL_NS",
    "WORKERS_ENV",
    "bench",
    "bench_specs",
    "compare",
    "run_one",
    "to_csv",
    "worker_count",
    "write_csv",
]
