"""Online classification of guided incremental digraphs.

Feed a stream of edge, terminal and closed updates to an engine and it
reports, as early as possible, which states can still reach a terminal
(Live) and which never will (Dead).
"""
from .core import (
    Closed,
    Edge,
    Event,
    InvalidUpdate,
    Status,
    Terminal,
    TraceError,
    classify_snapshot,
    oracle_events,
    oracle_events_replay,
    parse_trace,
    read_trace,
    serialize_trace,
    validate,
    write_trace,
)
from .engines import ENGINE_NAMES, CounterSet, Engine, make_engine, replay
from .euler_forest import EulerForest
from .generators import GenSpec, generate, suite
from .union_find import UnionFind

__version__ = "0.1.0"

__all__ = [
    "Closed",
    "CounterSet",
    "ENGINE_NAMES",
    "Edge",
    "Engine",
    "EulerForest",
    "Event",
    "GenSpec",
    "InvalidUpdate",
    "Status",
    "Terminal",
    "TraceError",
    "UnionFind",
    "classify_snapshot",
    "generate",
    "make_engine",
    "oracle_events",
    "oracle_events_replay",
    "parse_trace",
    "read_trace",
    "replay",
    "serialize_trace",
    "suite",
    "validate",
    "write_trace",
]
