"""Decide whether extended regexes match anything, one derivative at a time.

Each regex met along the way becomes a graph state, a nullable one is a
terminal, and the engine answers as soon as the root is settled.  The first
expression has a 100-character lookback, yet it is decided after a couple of
expansions because the engine need not explore the rest.

Run:  python3 demos/03_regex_emptiness.py
"""
from gidkit.regex import Builder, decide_emptiness, matches, parse

EXPRESSIONS = [
    r"~(.*\d.{100}) & (.\d)",  # no digit 100 chars from the end, and two chars ending in a digit
    r"\d & [a-z]",  # a digit that is also a lowercase letter
    r"(ab)* & ~(.*b) & ..",  # the only length-2 word of (ab)* ends in b
    r"~[]",  # everything, including the empty string
    r"(a|b)*c & ~(.*a.*)",
]


def main():
    for text in EXPRESSIONS:
        b = Builder()
        r = parse(text, b)
        out = decide_emptiness(r, b, "lazy")
        note = ""
        if out.verdict == "LIVE":
            note = f"  (matcher agrees: {matches(parse(text, Builder()), out.witness)})"
        print(f"{text:<28} {out.line()!r:<12} expansions={out.expansions:<3} states={out.states}{note}")


if __name__ == "__main__":
    main()
