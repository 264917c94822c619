"""Character predicates as bitsets over a small code-point alphabet."""
from __future__ import annotations

WIDTH = 128


class CharSet:
    """An immutable set of code points in ``range(width)``.

    Boolean operations are exact, so satisfiability is just non-emptiness.
    """

    __slots__ = ("bits", "width")

    def __init__(self, bits: int = 0, width: int = WIDTH):
        self.bits = bits & ((1 << width) - 1)
        self.width = width

    @classmethod
    def of(cls, chars: str, width: int = WIDTH) -> "CharSet":
        bits = 0
        for ch in chars:
            cp = ord(ch)
            if cp >= width:
                raise ValueError(f"{ch!r} is outside the {width}-code-point alphabet")
            bits |= 1 << cp
        return cls(bits, width)

    @classmethod
    def span(cls, lo: str, hi: str, width: int = WIDTH) -> "CharSet":
        a, b = ord(lo), ord(hi)
        if a > b:
            raise ValueError(f"empty range {lo!r}-{hi!r}")
        if b >= width:
            raise ValueError(f"{hi!r} is outside the {width}-code-point alphabet")
        return cls(((1 << (b + 1)) - 1) ^ ((1 << a) - 1), width)

    @classmethod
    def empty(cls, width: int = WIDTH) -> "CharSet":
        return cls(0, width)

    @classmethod
    def full(cls, width: int = WIDTH) -> "CharSet":
        return cls((1 << width) - 1, width)

    def __and__(self, other: "CharSet") -> "CharSet":
        return CharSet(self.bits & other.bits, self.width)

    def __or__(self, other: "CharSet") -> "CharSet":
        return CharSet(self.bits | other.bits, self.width)

    def __invert__(self) -> "CharSet":
        return CharSet(~self.bits, self.width)

    def __sub__(self, other: "CharSet") -> "CharSet":
        return CharSet(self.bits & ~other.bits, self.width)

    def __bool__(self) -> bool:
        return self.bits != 0

    def __eq__(self, other) -> bool:
        return isinstance(other, CharSet) and self.bits == other.bits and self.width == other.width

    def __hash__(self) -> int:
        return hash((self.bits, self.width))

    def __contains__(self, ch: str) -> bool:
        cp = ord(ch)
        return cp < self.width and (self.bits >> cp) & 1 == 1

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def is_full(self) -> bool:
        return self.bits == (1 << self.width) - 1

    def min_char(self) -> str:
        if not self.bits:
            raise ValueError("empty predicate has no witness")
        return chr((self.bits & -self.bits).bit_length() - 1)

    def chars(self) -> str:
        return "".join(chr(i) for i in range(self.width) if (self.bits >> i) & 1)

    def __repr__(self) -> str:
        return f"CharSet({self.show()})"

    def show(self) -> str:
        if not self.bits:
            return "[]"
        if self.is_full():
            return "."
        if self == DIGITS:
            return "\\d"
        runs = []
        cps = [ord(c) for c in self.chars()]
        start = prev = cps[0]
        for cp in cps[1:] + [None]:
            if cp is not None and cp == prev + 1:
                prev = cp
                continue
            runs.append((start, prev))
            if cp is not None:
                start = prev = cp
        if len(runs) == 1 and runs[0][0] == runs[0][1]:
            return _lit(chr(runs[0][0]))
        body = "".join(
            _lit(chr(a), True) if a == b else f"{_lit(chr(a), True)}-{_lit(chr(b), True)}" for a, b in runs
        )
        return f"[{body}]"


_SPECIAL = set("()[]{}|&~*.\\ ")


def _lit(ch: str, in_class: bool = False) -> str:
    if in_class:
        return "\\" + ch if ch in "]\\-^" else (ch if ch.isprintable() else f"\\x{ord(ch):02x}")
    if ch in _SPECIAL:
        return "\\" + ch
    return ch if ch.isprintable() else f"\\x{ord(ch):02x}"


DIGITS = CharSet.span("0", "9")
WORD = CharSet.span("a", "z") | CharSet.span("A", "Z") | DIGITS | CharSet.of("_")
SPACE = CharSet.of(" \t\n\r\f\v")
