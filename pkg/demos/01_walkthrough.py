"""Walk the seven-update example trace and watch every state's status move.

Run:  python3 demos/01_walkthrough.py
"""
from gidkit import make_engine
from gidkit.core import Closed, Edge, Terminal, format_update, oracle_events

TRACE = [Edge(1, 2), Edge(1, 3), Terminal(2), Edge(4, 3), Edge(4, 5), Closed(4), Closed(5)]


def main():
    eng = make_engine("lazy")
    print(f"{'update':<8}{'events':<20}statuses")
    for update in TRACE:
        events = eng.on_update(update)
        shown = ", ".join(f"{e.verdict} {e.state}" for e in events) or "-"
        statuses = " ".join(f"{s}:{st}" for s, st in sorted(eng.statuses().items()))
        print(f"{format_update(update):<8}{shown:<20}{statuses}")

    # 1 and 2 go live the moment 2 becomes terminal.  4 is closed but still
    # reaches the open state 3, so it stays unknown; 5 is closed with no way
    # out and dies on its close.
    print("\noffline oracle:", [f"{e.index}:{e.verdict} {e.state}" for e in oracle_events(TRACE)])


if __name__ == "__main__":
    main()
