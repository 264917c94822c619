"""Differential testing: every engine against the offline oracle, and a
planted bug caught at the exact update where it first shows.

Run:  python3 demos/04_differential.py
"""
from gidkit import ENGINE_NAMES, GenSpec, generate, make_engine
from gidkit.core import Terminal, oracle_events
from gidkit.engines import replay
from gidkit.engines.guided import LazyEngine
from gidkit.harness import compare


class ForgetfulLazy(LazyEngine):
    """Drops every third terminal label."""

    name = "forgetful"

    def __init__(self, audit=False):
        super().__init__(audit)
        self._seen = 0

    def _terminal(self, v):
        self._seen += 1
        if self._seen % 3:
            super()._terminal(v)


def main():
    specs = [GenSpec("sparse", 300, degree=d, seed=s) for d in (1, 2, 3) for s in range(3)]
    specs.append(GenSpec("dense", 200, p=0.02, seed=5))
    for spec in specs:
        # random traces carry no terminals; plant a few so both verdicts occur
        trace = [Terminal(s) for s in (3, 97, 211)] + generate(spec)
        want = oracle_events(trace)
        ok = [name for name in ENGINE_NAMES if replay(make_engine(name), trace).events == want]
        print(f"{spec.name:<32} {len(trace):>6} updates, {len(want):>4} events, agree: {len(ok)}/{len(ENGINE_NAMES)}")

    trace = [Terminal(s) for s in (7, 19, 33, 41)] + generate(GenSpec("sparse", 50, degree=2, seed=1))
    print()
    print(compare(["lazy", ForgetfulLazy()], trace).report())


if __name__ == "__main__":
    main()
