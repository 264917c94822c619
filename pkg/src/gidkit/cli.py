"""Command line: run, compare, gen, bench, regex.

Exit codes: 0 ok, 1 divergence, 2 input error, 3 timeout in run mode.
"""
from __future__ import annotations

import argparse
import sys

from .core import InvalidUpdate, TraceError, format_events, read_trace, serialize_trace, validate
from .engines import ENGINE_NAMES, EngineError, make_engine, replay
from .generators import FAMILIES, GenSpec, SpecError, generate
from .harness import DEFAULT_TIMEOUT, SUITES, bench, bench_specs, compare, write_csv

OK, DIVERGED, BAD_INPUT, TIMED_OUT = 0, 1, 2, 3


def _err(msg: str) -> None:
    print(f"gidkit: {msg}", file=sys.stderr)


def _load(path: str):
    """Parse and validate a trace; None (after printing a diagnostic) on failure."""
    try:
        trace = read_trace(path)
    except OSError as exc:
        _err(f"{path}: {exc.strerror or exc}")
        return None
    except TraceError as exc:
        _err(f"{path}: {exc}")
        return None
    check = validate(trace)
    for w in check.warnings:
        _err(f"{path}: warning: {w}")
    if not check.ok:
        _err(f"{path}: invalid trace: {check.violation}")
        return None
    return trace


def _engines(text: str) -> list[str]:
    names = [x.strip() for x in text.split(",") if x.strip()]
    for n in names:
        if n not in ENGINE_NAMES:
            raise argparse.ArgumentTypeError(f"unknown engine {n!r}; choose from {', '.join(ENGINE_NAMES)}")
    return names


def cmd_run(args) -> int:
    trace = _load(args.trace)
    if trace is None:
        return BAD_INPUT
    engine = make_engine(args.engine, audit=args.audit)
    try:
        res = replay(engine, trace, args.timeout)
    except EngineError as exc:
        _err(str(exc))
        return BAD_INPUT
    sys.stdout.write(format_events(res.events, args.verbose))
    if res.outcome == "timeout":
        _err(f"timed out after {res.wall_ns / 1e9:.2f} s")
        return TIMED_OUT
    return OK


def cmd_compare(args) -> int:
    trace = _load(args.trace)
    if trace is None:
        return BAD_INPUT
    if len(args.engines) < 2:
        _err("compare needs at least two engines")
        return BAD_INPUT
    div = compare(args.engines, trace)
    if div is None:
        print(f"ok: {len(args.engines)} engines agree on {len(trace)} updates")
        return OK
    print(div.report())
    return DIVERGED


def cmd_gen(args) -> int:
    try:
        spec = GenSpec(args.family, args.n, args.order, args.variant, args.degree, args.p, args.seed)
    except SpecError as exc:
        _err(str(exc))
        return BAD_INPUT
    text = serialize_trace(generate(spec), spec.header())
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return OK


def cmd_bench(args) -> int:
    try:
        specs = bench_specs(args.suite, args.max_n)
    except SpecError as exc:
        _err(str(exc))
        return BAD_INPUT
    records = bench(specs, args.engines, args.timeout, args.workers, args.keep_trivial)
    if args.output in (None, "-"):
        write_csv(records, sys.stdout)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            write_csv(records, fh)
    return OK


def cmd_regex(args) -> int:
    from .regex import Builder, RegexSyntaxError, decide_emptiness, parse

    b = Builder()
    try:
        r = parse(args.expr, b)
    except RegexSyntaxError as exc:
        _err(f"regex syntax error {exc}")
        _err(f"  {args.expr}")
        _err("  " + " " * exc.pos + "^")
        return BAD_INPUT
    out = decide_emptiness(r, b, args.engine, args.budget)
    if args.emit_trace:
        with open(args.emit_trace, "w", encoding="utf-8") as fh:
            fh.write(serialize_trace(out.trace, f"regex {args.expr}"))
    print(out.line())
    if args.verbose:
        print(f"expansions={out.expansions} states={out.states}", file=sys.stderr)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gidkit", description="Online live/dead classification of guided incremental digraphs.")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="replay a trace on one engine and print its events")
    run.add_argument("trace")
    run.add_argument("--engine", "-e", default="lazy", choices=ENGINE_NAMES)
    run.add_argument("--verbose", "-v", action="store_true", help="prefix events with their update index")
    run.add_argument("--timeout", type=float, default=None, help="seconds")
    run.add_argument("--audit", action="store_true", help="check engine invariants after every update")
    run.set_defaults(func=cmd_run)

    cmp_ = sub.add_parser("compare", help="check that engines emit identical events")
    cmp_.add_argument("trace")
    cmp_.add_argument("--engines", type=_engines, default=list(ENGINE_NAMES))
    cmp_.set_defaults(func=cmd_compare)

    gen = sub.add_parser("gen", help="write a generated benchmark trace")
    gen.add_argument("family", choices=FAMILIES)
    gen.add_argument("n", type=int)
    gen.add_argument("--order", default="fwd", choices=("fwd", "bwd"))
    gen.add_argument("--variant", default="dead", choices=("dead", "unknown"))
    gen.add_argument("--degree", type=int, default=0)
    gen.add_argument("--p", type=float, default=0.0)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--output", "-o")
    gen.set_defaults(func=cmd_gen)

    be = sub.add_parser("bench", help="time engines on a suite and write CSV")
    be.add_argument("suite", choices=SUITES)
    be.add_argument("--engines", type=_engines, default=list(ENGINE_NAMES))
    be.add_argument("--timeout", type=float, default=DEFAULT_TIMEOUT, help="seconds per run")
    be.add_argument("--max-n", type=int, default=None)
    be.add_argument("--workers", type=int, default=None, help="defaults to $GIDKIT_WORKERS or 1")
    be.add_argument("--keep-trivial", action="store_true", help="keep benchmarks every engine finished in under 10 ms")
    be.add_argument("--output", "-o")
    be.set_defaults(func=cmd_bench)

    rx = sub.add_parser("regex", help="decide whether an extended regex matches anything")
    rx.add_argument("expr")
    rx.add_argument("--engine", "-e", default="lazy", choices=ENGINE_NAMES)
    rx.add_argument("--budget", type=int, default=10_000, help="maximum derivative expansions")
    rx.add_argument("--emit-trace", metavar="PATH")
    rx.add_argument("--verbose", "-v", action="store_true")
    rx.set_defaults(func=cmd_regex)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        return args.func(args)
    except InvalidUpdate as exc:
        _err(str(exc))
        return BAD_INPUT
    except BrokenPipeError:
        return OK


if __name__ == "__main__":
    sys.exit(main())
