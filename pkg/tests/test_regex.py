import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gidkit.engines import ENGINE_NAMES
from gidkit.regex import (
    Branch,
    Builder,
    CharSet,
    DerivativeCap,
    Deriver,
    Leaf,
    RegexSyntaxError,
    decide_emptiness,
    expand,
    leaves,
    matches,
    parse,
)
from gidkit.regex.charset import DIGITS

ALPHA = "ab0"  # letters, and a digit so \d and \w split it


# -- random regexes -----------------------------------------------------------

atoms = st.sampled_from(["a", "b", "0", ".", "\\d", "[ab]", "()", "[]"])


def _wrap(children):
    return st.one_of(
        st.tuples(children, children).map(lambda p: f"({p[0]}{p[1]})"),
        st.tuples(children, children).map(lambda p: f"({p[0]}|{p[1]})"),
        st.tuples(children, children).map(lambda p: f"({p[0]}&{p[1]})"),
        children.map(lambda c: f"({c})*"),
        children.map(lambda c: f"~({c})"),
    )


regex_text = st.recursive(atoms, _wrap, max_leaves=7)


def strings(alpha, max_len):
    for k in range(max_len + 1):
        for t in itertools.product(alpha, repeat=k):
            yield "".join(t)


# -- character sets -----------------------------------------------------------


def test_charset_algebra():
    a, d = CharSet.of("abc"), DIGITS
    assert not (a & d)
    assert len(a | d) == 13
    assert (~a & a) == CharSet.empty()
    assert (a | ~a).is_full()
    assert (a - CharSet.of("b")).chars() == "ac"
    assert "b" in a and "z" not in a
    assert (~d).min_char() == "\x00"
    assert CharSet.span("0", "9") == d
    with pytest.raises(ValueError):
        CharSet.of("é")
    with pytest.raises(ValueError):
        CharSet.empty().min_char()


# -- construction and normalisation ------------------------------------------


def test_normalisation_rules():
    b = Builder()
    a, c = b.chars("a"), b.chars("c")
    x = b.cat(a, b.star(c))
    assert b.inter(x, b.bottom) is b.bottom
    assert b.alt(x, b.bottom) is x
    assert b.inter(x, x) is x and b.alt(x, x) is x
    assert b.neg(b.neg(x)) is x
    assert b.cat(b.eps, x) is x and b.cat(x, b.eps) is x
    assert b.cat(b.bottom, x) is b.bottom and b.cat(x, b.bottom) is b.bottom
    assert b.star(b.star(x)) is b.star(x)
    assert b.alt(x, b.star(c)) is b.alt(b.star(c), x)
    assert b.alt(a, c) is b.pred(CharSet.of("ac"))
    assert b.inter(b.pred(CharSet.of("ab")), b.pred(CharSet.of("bc"))) is b.chars("b")
    assert b.inter(b.eps, b.star(a)) is b.eps
    assert b.inter(b.eps, a) is b.bottom
    assert b.inter(x, b.anything) is x and b.alt(x, b.anything) is b.anything
    # concatenation is kept right-nested
    assert b.cat(b.cat(a, c), x) is b.cat(a, b.cat(c, x))


def test_nullable():
    b = Builder()
    assert b.eps.nullable and not parse("\\d", b).nullable
    assert parse("~[]", b).nullable
    assert not parse("(\\d\\d) & ~()", b).nullable
    assert parse("a* & (b|())", b).nullable


def test_parse_examples():
    b = Builder()
    assert parse("[]", b) is b.bottom and parse("⊥", b) is b.bottom
    assert parse("()", b) is b.eps
    assert parse(".", b) is b.top
    assert parse("a{3}", b) is b.literal("aaa")
    assert parse("a b", b) is b.literal("ab")
    assert parse("\\ ", b) is b.chars(" ")
    assert parse("\\x41", b) is b.chars("A")
    assert parse("[^\\d]", b) is b.pred(~DIGITS)
    assert parse("\\D", b) is b.pred(~DIGITS)
    assert parse("~a*", b) is b.neg(b.star(b.chars("a")))
    assert parse("a|b&c", b) is b.alt(b.chars("a"), b.inter(b.chars("b"), b.chars("c")))


@pytest.mark.parametrize("text, pos", [("a(b", 3), ("*a", 0), ("[a-", 3), ("a{x}", 1), ("\\", 1), ("a)", 1), ("[z-a]", 4)])
def test_parse_errors(text, pos):
    with pytest.raises(RegexSyntaxError) as info:
        parse(text)
    assert info.value.pos == pos


@settings(max_examples=200)
@given(regex_text)
def test_show_parse_roundtrip(text):
    b = Builder()
    r = parse(text, b)
    assert parse(str(r), b) is r


# -- derivatives --------------------------------------------------------------


def test_derivative_examples():
    b = Builder()
    d = Deriver(b)
    alpha = b.pred(DIGITS)
    assert d.derive(alpha) == Branch(DIGITS, Leaf(b.eps), Leaf(b.bottom))
    assert d.derive(b.eps) == Leaf(b.bottom)
    assert d.derive(b.bottom) == Leaf(b.bottom)
    assert expand(d, alpha) == [(DIGITS, b.eps)]
    assert expand(d, parse("\\d & [a-z]", b)) == []


def test_motivating_derivative():
    b = Builder()
    d = Deriver(b)
    L = parse("~(.*\\d.{100})", b)
    R = b.inter(L, parse(".\\d", b))
    alpha = parse("\\d", b)
    yes = b.inter(L, b.neg(parse(".{100}", b)), alpha)
    no = b.inter(L, alpha)
    assert d.derive(R) == Branch(DIGITS, Leaf(yes), Leaf(no))
    # the single-digit remainder
    assert expand(d, alpha) == [(DIGITS, b.eps)]


@settings(max_examples=300, deadline=None)
@given(regex_text, st.text(ALPHA, max_size=4))
def test_derivative_law(text, s):
    """s in L(r) iff s[1:] in L(target of the transition taken on s[0])."""
    b = Builder()
    r = parse(text, b)
    if not s:
        assert matches(r, "") == r.nullable
        return
    d = Deriver(b)
    moves = expand(d, r)
    targets = [t for cond, t in moves if s[0] in cond]
    assert len(targets) <= 1
    want = matches(r, s)
    assert want == (bool(targets) and matches(targets[0], s[1:]))


@settings(max_examples=150, deadline=None)
@given(regex_text)
def test_leaf_count_law(text):
    b = Builder()
    d = Deriver(b)
    r = parse(text, b)
    tree = d.derive(r)
    assert len(expand(d, r)) <= len(leaves(tree))


def test_leaf_cap():
    b = Builder()
    r = parse("~(a.*) & ~(b.*) & ~(c.*) & ~(d.*) & ~(e.*) & ..*", b)
    with pytest.raises(DerivativeCap):
        Deriver(b, leaf_cap=3).derive(r)
    out = decide_emptiness(r, b, deriver=Deriver(b, leaf_cap=3))
    assert out.verdict == "BUDGET" and "leaves" in out.reason


# -- emptiness ----------------------------------------------------------------


def test_decide_examples():
    b = Builder()
    out = decide_emptiness(parse("~(.*\\d.{100}) & (.\\d)", b), b)
    assert out.verdict == "LIVE" and out.expansions == 2
    assert len(out.witness) == 2 and all(c in "0123456789" for c in out.witness)
    bot = decide_emptiness(b.bottom, b)
    assert bot.verdict == "DEAD" and bot.expansions == 1
    assert decide_emptiness(parse("\\d & [a-z]", b), b).verdict == "DEAD"
    assert decide_emptiness(b.anything, b).line() == "LIVE "
    assert decide_emptiness(b.eps, b).witness == ""


def test_budget():
    b = Builder()
    r = parse("~(.*a.{30}) & .{40}", b)
    out = decide_emptiness(r, b, budget=3)
    assert out.verdict == "BUDGET" and out.expansions == 3
    assert out.line() == "BUDGET 3"
    with pytest.raises(ValueError):
        decide_emptiness(r, b, budget=0)


def test_trace_is_valid_gid():
    from gidkit.core import oracle_events, validate

    b = Builder()
    out = decide_emptiness(parse("(a|b)*c & ~(.*bb.*)", b), b)
    assert validate(out.trace).ok
    assert out.verdict == "LIVE"
    assert any(e.state == 0 and e.verdict == "Live" for e in oracle_events(out.trace))


@settings(max_examples=200, deadline=None)
@given(regex_text)
def test_decide_against_brute_force(text):
    b = Builder()
    r = parse(text, b)
    out = decide_emptiness(r, b, budget=500)
    assert out.verdict != "BUDGET"
    if out.verdict == "LIVE":
        assert matches(r, out.witness)
        # shortest: nothing shorter matches
        assert not any(matches(r, s) for s in strings(ALPHA + "z", len(out.witness) - 1))
    else:
        # ALPHA plus one character outside every atom covers every predicate class
        assert not any(matches(r, s) for s in strings(ALPHA + "z", 4))


@settings(max_examples=60, deadline=None)
@given(regex_text)
def test_engines_agree(text):
    b = Builder()
    r = parse(text, b)
    d = Deriver(b)
    outs = [decide_emptiness(r, b, engine, deriver=d) for engine in ENGINE_NAMES]
    assert len({(o.verdict, o.expansions, o.witness) for o in outs}) == 1


def test_matcher_basics():
    b = Builder()
    assert matches(parse("a*b", b), "aaab")
    assert not matches(parse("a*b", b), "aaa")
    assert matches(parse("~(a*)", b), "ab")
    assert matches(parse("(a|b)*&~(.*aa.*)", b), "abab")
    assert not matches(parse("(a|b)*&~(.*aa.*)", b), "baab")
    assert matches(parse("()", b), "")
    assert not matches(parse("[]", b), "")


def test_random_long_strings_agree_with_python_re():
    import re

    rng = random.Random(2)
    cases = [("(a|b)*abb", "(a|b)*abb"), ("a{3}b*", "a{3}b*"), ("[a-c]*\\d", "[a-c]*\\d")]
    b = Builder()
    for ours, theirs in cases:
        r = parse(ours, b)
        for _ in range(200):
            s = "".join(rng.choice("abc0") for _ in range(rng.randint(0, 8)))
            assert matches(r, s) == bool(re.fullmatch(theirs, s))
