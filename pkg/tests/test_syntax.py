"""Bracket syntax: parsing, printing, nesting, and the worm enumerator."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bracketcalc import (
    TOP,
    TOP_WORM,
    BracketWorm,
    Conj,
    Diamond,
    ParseError,
    Top,
    Var,
    nesting_formula,
    nesting_worm,
    parse_formula,
    parse_worm,
    print_formula,
    print_worm,
)
from corpus import enumerate_worms, worms_with_pairs


def test_parse_worm_examples():
    assert parse_worm("T") == TOP_WORM
    one = BracketWorm((TOP_WORM,))
    assert parse_worm("(())") == BracketWorm((one,))
    assert parse_worm("()()") == BracketWorm((TOP_WORM, TOP_WORM))
    assert parse_worm("(T)") == BracketWorm((TOP_WORM,))
    assert parse_worm(" ( ( ) ) ") == BracketWorm((one,))


def test_parse_worm_errors():
    with pytest.raises(ParseError) as err:
        parse_worm("(()")
    assert err.value.offset == 3
    with pytest.raises(ParseError):
        parse_worm("")
    with pytest.raises(ParseError):
        parse_worm("x")
    with pytest.raises(ParseError):
        parse_worm("T(")
    with pytest.raises(ParseError):
        parse_worm("()x")


def test_parse_formula_examples():
    one = BracketWorm((TOP_WORM,))
    assert parse_formula("p1 & (())p2") == Conj(Var(1), Diamond(one, Var(2)))
    assert parse_formula("T") == TOP
    assert parse_formula("()T") == Diamond(TOP_WORM, TOP)
    assert parse_formula("(())") == Diamond(one, TOP)
    assert parse_formula("p1&p2&p3") == Conj(Conj(Var(1), Var(2)), Var(3))
    assert parse_formula("()[p1&p2]") == Diamond(TOP_WORM, Conj(Var(1), Var(2)))


def test_parse_formula_errors():
    with pytest.raises(ParseError):
        parse_formula("p0")
    with pytest.raises(ParseError):
        parse_formula("p")
    with pytest.raises(ParseError):
        parse_formula("p1 &")
    with pytest.raises(ParseError):
        parse_formula("[p1")


def test_print_examples():
    one = BracketWorm((TOP_WORM,))
    assert print_worm(TOP_WORM) == "T"
    assert print_worm(BracketWorm((TOP_WORM, TOP_WORM))) == "()()"
    assert print_formula(Diamond(one, TOP)) == "(())"
    assert print_formula(Conj(TOP, TOP)) == "T&T"
    assert print_formula(Diamond(one, Var(2))) == "(())p2"


def test_nesting_worm():
    assert nesting_worm(parse_worm("T")) == 0
    assert nesting_worm(parse_worm("(())")) == 2
    assert nesting_worm(parse_worm("()()")) == 1


def test_nesting_formula():
    assert nesting_formula(Var(1)) == 0
    assert nesting_formula(TOP) == 0
    assert nesting_formula(parse_formula("(())p1")) == 2
    assert nesting_formula(Conj(Diamond(TOP_WORM, TOP), Var(2))) == 1


# --- round trips ----------------------------------------------------------------


def test_worm_round_trip_exhaustive():
    # every worm with at most 6 bracket pairs (12 grammar symbols)
    for w in enumerate_worms(6):
        assert parse_worm(print_worm(w)) == w


def _formulas(worms, depth):
    if depth == 0:
        yield TOP
        yield Var(1)
        yield Var(2)
        return
    subs = list(_formulas(worms, depth - 1))
    yield from subs
    for w in worms:
        for f in subs:
            yield Diamond(w, f)
    for f in subs:
        for g in subs:
            yield Conj(f, g)


def test_formula_round_trip_small():
    worms = list(enumerate_worms(2))
    seen = 0
    for f in _formulas(worms, 2):
        assert parse_formula(print_formula(f)) == f
        seen += 1
        if seen > 4000:
            break


@st.composite
def random_formula(draw, depth=3):
    kind = draw(st.integers(0, 3 if depth else 1))
    if kind == 0:
        return TOP
    if kind == 1:
        return Var(draw(st.integers(1, 9)))
    if kind == 2:
        worms = list(enumerate_worms(3))
        w = worms[draw(st.integers(0, len(worms) - 1))]
        return Diamond(w, draw(random_formula(depth=depth - 1)))
    return Conj(
        draw(random_formula(depth=depth - 1)), draw(random_formula(depth=depth - 1))
    )


@given(random_formula())
@settings(max_examples=300, deadline=None)
def test_formula_round_trip_random(f):
    assert parse_formula(print_formula(f)) == f


# --- nesting subformula property ---------------------------------------------


def _worm_subformulas(w):
    yield w
    for e in w.entries:
        yield from _worm_subformulas(e)


def _all_worm_parts(f):
    if isinstance(f, (Top, Var)):
        return
    if isinstance(f, Conj):
        yield from _all_worm_parts(f.left)
        yield from _all_worm_parts(f.right)
        return
    yield from _worm_subformulas(f.label)
    yield from _all_worm_parts(f.body)


def test_nesting_subformula_property():
    worms = list(enumerate_worms(3))
    count = 0
    for f in _formulas(worms, 2):
        nt = nesting_formula(f)
        if nt >= 1:
            assert any(nesting_worm(a) + 1 == nt for a in _all_worm_parts(f)), (
                print_formula(f)
            )
        count += 1
        if count > 4000:
            break


# --- enumerator soundness -------------------------------------------------------


def _pairs(w):
    return sum(1 + _pairs(e) for e in w.entries)


def test_enumerator_soundness():
    catalan = [1, 1, 2, 5, 14, 42, 132, 429]
    for k in range(6):
        ws = list(worms_with_pairs(k))
        assert len(ws) == catalan[k]
        assert len(set(ws)) == len(ws)
        assert all(_pairs(w) == k for w in ws)
    upto = list(enumerate_worms(5))
    assert len(upto) == sum(catalan[:6])
    assert len(set(upto)) == len(upto)
