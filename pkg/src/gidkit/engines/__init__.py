"""Engine registry."""
from __future__ import annotations

from .base import CounterSet, Engine, EngineError, ReplayResult, Timeout, replay
from .bfgt import BFGTEngine
from .guided import AuditError, FirstCutEngine, LazyEngine, LogEngine
from .naive import NaiveEngine
from .simple import SimpleEngine

ENGINES = {
    "naive": NaiveEngine,
    "simple": SimpleEngine,
    "bfgt": BFGTEngine,
    "firstcut": FirstCutEngine,
    "log": LogEngine,
    "lazy": LazyEngine,
}
ENGINE_NAMES = tuple(ENGINES)


def make_engine(name: str, audit: bool = False) -> Engine:
    try:
        cls = ENGINES[name]
    except KeyError:
        raise ValueError(f"unknown engine {name!r}; choose from {', '.join(ENGINES)}") from None
    return cls(audit=audit)


__all__ = [
    "AuditError",
    "BFGTEngine",
    "CounterSet",
    "ENGINES",
    "ENGINE_NAMES",
    "Engine",
    "EngineError",
    "FirstCutEngine",
    "LazyEngine",
    "LogEngine",
    "NaiveEngine",
    "ReplayResult",
    "SimpleEngine",
    "Timeout",
    "make_engine",
    "replay",
]
