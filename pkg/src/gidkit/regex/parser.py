"""Surface syntax for extended regexes.

    alt     := inter ('|' inter)*
    inter   := concat ('&' concat)*
    concat  := unary+
    unary   := '~' unary | postfix
    postfix := atom ('*' | '{' k '}')*
    atom    := '(' ')' | '(' alt ')' | '.' | '[' class ']' | escape | char

``()`` is the empty string and ``[]`` the empty language.  ``\\d``, ``\\w``
and ``\\s`` are the usual classes; ``\\xHH`` is a code point.  Whitespace
between tokens is ignored, so a literal space is written ``\\ ``.
"""
from __future__ import annotations

from .charset import DIGITS, SPACE, WORD, CharSet
from .syntax import Builder, Regex


class RegexSyntaxError(ValueError):
    def __init__(self, pos: int, msg: str, text: str = ""):
        super().__init__(f"at position {pos}: {msg}")
        self.pos = pos
        self.text = text


_CLASSES = {"d": DIGITS, "w": WORD, "s": SPACE}


class _Parser:
    def __init__(self, text: str, builder: Builder):
        self.text = text
        self.b = builder
        self.i = 0

    def error(self, msg: str, pos: int | None = None):
        raise RegexSyntaxError(self.i if pos is None else pos, msg, self.text)

    def skip(self) -> None:
        t = self.text
        while self.i < len(t) and t[self.i] in " \t\r\n":
            self.i += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def take(self, ch: str) -> None:
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.i += 1

    def parse(self) -> Regex:
        r = self.alt()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return r

    def alt(self) -> Regex:
        parts = [self.inter()]
        while self.peek() == "|":
            self.i += 1
            parts.append(self.inter())
        return self.b.alt(*parts) if len(parts) > 1 else parts[0]

    def inter(self) -> Regex:
        parts = [self.concat()]
        while self.peek() == "&":
            self.i += 1
            parts.append(self.concat())
        return self.b.inter(*parts) if len(parts) > 1 else parts[0]

    def concat(self) -> Regex:
        parts = []
        while self.peek() not in ("", "|", "&", ")"):
            parts.append(self.unary())
        if not parts:
            self.error("expected an expression")
        return self.b.seq(*parts)

    def unary(self) -> Regex:
        if self.peek() == "~":
            self.i += 1
            return self.b.neg(self.unary())
        return self.postfix()

    def postfix(self) -> Regex:
        r = self.atom()
        while True:
            c = self.peek()
            if c == "*":
                self.i += 1
                r = self.b.star(r)
            elif c == "{":
                start = self.i
                self.i += 1
                j = self.text.find("}", self.i)
                body = self.text[self.i:j].strip() if j >= 0 else ""
                if not body.isdigit():
                    self.error("expected {k} with a decimal k", start)
                self.i = j + 1
                r = self.b.power(r, int(body))
            else:
                return r

    def atom(self) -> Regex:
        c = self.peek()
        if c == "(":
            self.i += 1
            if self.peek() == ")":
                self.i += 1
                return self.b.eps
            r = self.alt()
            self.take(")")
            return r
        if c == ".":
            self.i += 1
            return self.b.top
        if c == "[":
            self.i += 1
            return self.b.pred(self.char_class())
        if c in ("*", "{", "}", "]"):
            self.error(f"unexpected {c!r}")
        if c == "⊥":
            self.i += 1
            return self.b.bottom
        return self.b.pred(self.single())

    def single(self) -> CharSet:
        """One literal or escape outside a class."""
        t = self.text
        c = t[self.i]
        self.i += 1
        if c != "\\":
            return self._cs(c)
        return self.escape()

    def escape(self) -> CharSet:
        t = self.text
        if self.i >= len(t):
            self.error("dangling backslash")
        c = t[self.i]
        self.i += 1
        if c in _CLASSES:
            return CharSet(_CLASSES[c].bits, self.b.width)
        if c in ("D", "W", "S"):
            return ~CharSet(_CLASSES[c.lower()].bits, self.b.width)
        if c == "x":
            hexa = t[self.i:self.i + 2]
            if len(hexa) != 2 or any(h not in "0123456789abcdefABCDEF" for h in hexa):
                self.error("expected two hex digits after \\x")
            self.i += 2
            return self._cs(chr(int(hexa, 16)))
        return self._cs({"n": "\n", "t": "\t", "r": "\r"}.get(c, c))

    def _cs(self, ch: str) -> CharSet:
        try:
            return CharSet.of(ch, self.b.width)
        except ValueError as exc:
            self.error(str(exc), self.i - 1)

    def char_class(self) -> CharSet:
        t = self.text
        out = CharSet.empty(self.b.width)
        negate = False
        if self.i < len(t) and t[self.i] == "^":
            negate = True
            self.i += 1
        while True:
            if self.i >= len(t):
                self.error("unterminated character class")
            c = t[self.i]
            if c == "]":
                self.i += 1
                break
            lo = self._class_atom()
            if self.i + 1 < len(t) and t[self.i] == "-" and t[self.i + 1] != "]":
                self.i += 1
                hi = self._class_atom()
                if len(lo) != 1 or len(hi) != 1:
                    self.error("class ranges need single characters")
                try:
                    out = out | CharSet.span(lo.min_char(), hi.min_char(), self.b.width)
                except ValueError as exc:
                    self.error(str(exc))
            else:
                out = out | lo
        return ~out if negate else out

    def _class_atom(self) -> CharSet:
        c = self.text[self.i]
        self.i += 1
        if c == "\\":
            return self.escape()
        return self._cs(c)


def parse(text: str, builder: Builder | None = None) -> Regex:
    """Parse ``text`` into a regex interned in ``builder`` (a fresh one by default)."""
    return _Parser(text, builder if builder is not None else Builder()).parse()
