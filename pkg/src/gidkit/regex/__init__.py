"""Extended regexes and derivative-driven emptiness checking."""
from .charset import CharSet
from .decide import Outcome, decide_emptiness
from .derivative import Branch, DerivativeCap, Deriver, Leaf, expand, leaves
from .matcher import matches
from .parser import RegexSyntaxError, parse
from .syntax import Builder, Regex

__all__ = [
    "Branch",
    "Builder",
    "CharSet",
    "DerivativeCap",
    "Deriver",
    "Leaf",
    "Outcome",
    "Regex",
    "RegexSyntaxError",
    "decide_emptiness",
    "expand",
    "leaves",
    "matches",
    "parse",
]
