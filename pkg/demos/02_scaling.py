"""Reverse line and cycle traces: where the quadratic engine falls over.

A line read sink-first keeps handing the simple engine a long chain to
re-walk on every close, while the guided engines touch each edge a bounded
number of times.  Sizes are small so this finishes in well under a minute.

Run:  python3 demos/02_scaling.py
"""
import math

from gidkit.generators import GenSpec
from gidkit.harness import run_one

SIZES = (250, 500, 1000, 2000)
ENGINES = ("simple", "bfgt", "log", "lazy")


def main():
    for fam in ("line", "cycle"):
        print(f"\n{fam}-rev: milliseconds per run")
        print(f"{'n':>6} " + " ".join(f"{e:>9}" for e in ENGINES))
        times = {e: [] for e in ENGINES}
        for n in SIZES:
            row = []
            for eng in ENGINES:
                rec = run_one(GenSpec(fam, n, "bwd", "dead"), eng, timeout=60)
                times[eng].append(rec.time_ns / 1e6)
                row.append(f"{rec.time_ns / 1e6:9.1f}")
            print(f"{n:>6} " + " ".join(row))
        # doubling n: a linear engine roughly doubles, a quadratic one quadruples
        growth = {e: math.log2(t[-1] / t[-2]) for e, t in times.items()}
        print("growth exponent on the last doubling: " + ", ".join(f"{e} {g:.2f}" for e, g in growth.items()))


if __name__ == "__main__":
    main()
