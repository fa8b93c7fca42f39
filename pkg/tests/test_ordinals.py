"""Ordinal arithmetic: examples, invariants, and a base-omega oracle."""

import itertools
import random

import pytest

from bracketcalc import (
    OMEGA,
    ONE,
    ZERO,
    NotLeftSubtractable,
    NotPrincipal,
    NotSuccessor,
    Ordinal,
    OrdinalKind,
    VeblenTerm,
    add,
    classify,
    cmp,
    exp_e,
    hyper_exp,
    left_sub,
    log_principal,
    mul_nat,
    nat,
    omega_pow,
    parse_ordinal,
    pred,
    print_ordinal,
    veblen,
    veblen_iter,
)
from corpus import corpus_ordinals

EPS0 = veblen(ONE, ZERO)


# --- base-omega digit oracle: ordinals below omega**omega as digit vectors ---


def ov(digits):
    """Ordinal from base-omega digits, least significant first."""
    terms = []
    for i in range(len(digits) - 1, 0, -1):
        terms.extend([VeblenTerm(ZERO, nat(i))] * digits[i])
    return Ordinal(tuple(terms), digits[0] if digits else 0)


def oracle_cmp(x, y):
    n = max(len(x), len(y))
    xp = list(x) + [0] * (n - len(x))
    yp = list(y) + [0] * (n - len(y))
    for i in range(n - 1, -1, -1):
        if xp[i] != yp[i]:
            return -1 if xp[i] < yp[i] else 1
    return 0


def oracle_add(x, y):
    j = max((i for i, d in enumerate(y) if d), default=None)
    if j is None:
        return list(x)
    out = [0] * max(len(x), len(y))
    for i in range(j + 1, len(x)):
        out[i] = x[i]
    out[j] = (x[j] if j < len(x) else 0) + y[j]
    for i in range(j):
        out[i] = y[i] if i < len(y) else 0
    return out


def all_digit_vectors(max_digit=3, max_len=4):
    for n in range(max_len + 1):
        yield from (list(t) for t in itertools.product(range(max_digit + 1), repeat=n))


def test_digit_oracle_cmp_add_mul():
    vecs = list(all_digit_vectors())
    for x in vecs:
        for y in vecs:
            assert cmp(ov(x), ov(y)) == oracle_cmp(x, y), (x, y)
            assert add(ov(x), ov(y)) == ov(oracle_add(x, y)), (x, y)
    for x in vecs[:120]:
        for n in (0, 1, 2, 3, 7):
            expect = []
            for _ in range(n):
                expect = oracle_add(expect, x)
            assert mul_nat(ov(x), n) == ov(expect), (x, n)


# --- spec'd examples ---------------------------------------------------------


def test_cmp_examples():
    assert cmp(ZERO, OMEGA) < 0
    assert cmp(OMEGA, EPS0) < 0
    assert cmp(add(OMEGA, ONE), add(OMEGA, ONE)) == 0


def test_add_examples():
    assert add(ONE, OMEGA) == OMEGA
    assert add(OMEGA, ONE) == Ordinal(OMEGA.terms, 1)
    w2 = omega_pow(nat(2))
    assert add(add(w2, ONE), OMEGA) == Ordinal(w2.terms + OMEGA.terms)


def test_left_sub_examples():
    assert left_sub(ZERO, EPS0) == EPS0
    assert left_sub(ONE, OMEGA) == OMEGA
    assert left_sub(OMEGA, add(OMEGA, nat(2))) == nat(2)
    with pytest.raises(NotLeftSubtractable):
        left_sub(OMEGA, ONE)


def test_mul_nat_examples():
    assert mul_nat(OMEGA, 0) == ZERO
    assert mul_nat(ONE, 3) == nat(3)
    w1 = add(OMEGA, ONE)
    assert mul_nat(w1, 2) == add(OMEGA, w1)


def test_exp_e_examples():
    assert exp_e(ZERO) == ZERO
    assert exp_e(ONE) == OMEGA
    assert exp_e(nat(2)) == omega_pow(nat(2))


def test_omega_pow_and_log():
    assert omega_pow(ZERO) == ONE
    assert omega_pow(EPS0) == EPS0
    assert log_principal(omega_pow(nat(2))) == nat(2)
    assert log_principal(ONE) == ZERO
    with pytest.raises(NotPrincipal):
        log_principal(nat(2))
    with pytest.raises(NotPrincipal):
        log_principal(ZERO)


def test_veblen_examples():
    assert veblen(ZERO, ONE) == OMEGA
    assert veblen(ZERO, EPS0) == EPS0
    assert veblen(ONE, ZERO) == EPS0
    assert veblen(ZERO, ZERO) == ONE


def test_veblen_iter_examples():
    assert veblen_iter(ZERO, 2, ZERO) == OMEGA
    assert veblen_iter(ONE, 0, nat(5)) == nat(5)
    assert veblen_iter(ZERO, 1, ONE) == OMEGA


def test_hyper_exp_examples():
    assert hyper_exp(OMEGA, ONE) == EPS0
    assert hyper_exp(ONE, ONE) == OMEGA
    assert hyper_exp(nat(2), ONE) == omega_pow(OMEGA)
    assert hyper_exp(EPS0, ZERO) == ZERO


def test_classify_pred():
    assert classify(ZERO) == OrdinalKind.ZERO
    w1 = add(OMEGA, ONE)
    assert classify(w1) == OrdinalKind.SUCCESSOR
    assert pred(w1) == OMEGA
    assert classify(EPS0) == OrdinalKind.LIMIT
    with pytest.raises(NotSuccessor):
        pred(OMEGA)


# --- corpus invariants --------------------------------------------------------


def _corpus():
    return corpus_ordinals(7)


def test_cmp_total_order():
    vals = _corpus()
    for a in vals:
        assert cmp(a, a) == 0
    rng = random.Random(11)
    for _ in range(4000):
        a, b = rng.choice(vals), rng.choice(vals)
        ca, cb = cmp(a, b), cmp(b, a)
        assert ca == -cb
        if ca == 0:
            assert a == b  # canonical representation
    for _ in range(4000):
        a, b, c = rng.choice(vals), rng.choice(vals), rng.choice(vals)
        if cmp(a, b) <= 0 and cmp(b, c) <= 0:
            assert cmp(a, c) <= 0


def test_add_associative():
    vals = _corpus()
    rng = random.Random(12)
    for _ in range(4000):
        a, b, c = rng.choice(vals), rng.choice(vals), rng.choice(vals)
        assert add(add(a, b), c) == add(a, add(b, c))


def test_left_sub_round_trip():
    vals = _corpus()
    rng = random.Random(13)
    for _ in range(4000):
        mu, xi = rng.choice(vals), rng.choice(vals)
        if cmp(mu, xi) <= 0:
            assert add(mu, left_sub(mu, xi)) == xi


def test_exp_e_strictly_monotone():
    vals = sorted(_corpus(), key=lambda o: (len(o.terms), o.fin))
    rng = random.Random(14)
    for _ in range(3000):
        a, b = rng.choice(vals), rng.choice(vals)
        c = cmp(a, b)
        if c < 0:
            assert cmp(exp_e(a), exp_e(b)) < 0
        elif c == 0:
            assert exp_e(a) == exp_e(b)


def test_hyper_exp_composition_law():
    vals = _corpus()
    rng = random.Random(15)
    for _ in range(1500):
        a, b, g = rng.choice(vals), rng.choice(vals), rng.choice(vals)
        assert hyper_exp(add(a, b), g) == hyper_exp(a, hyper_exp(b, g))


def test_hyper_exp_indecomposable():
    vals = _corpus()
    rng = random.Random(16)
    for _ in range(2000):
        a, b = rng.choice(vals), rng.choice(vals)
        if not a.is_zero() and not b.is_zero():
            v = hyper_exp(a, b)
            assert len(v.terms) == 1 and v.fin == 0


# --- textual grammar -----------------------------------------------------------


def test_parse_print_round_trip():
    for text, val in [
        ("0", ZERO),
        ("3", nat(3)),
        ("w", OMEGA),
        ("w^2", omega_pow(nat(2))),
        ("w^w", omega_pow(OMEGA)),
        ("phi(1,0)", EPS0),
        ("phi(0,1)+2", add(OMEGA, nat(2))),
        ("phi(1,0)+phi(0,1)+1", add(EPS0, add(OMEGA, ONE))),
    ]:
        assert parse_ordinal(text) == val
        assert parse_ordinal(print_ordinal(val)) == val
    for o in corpus_ordinals(6):
        assert parse_ordinal(print_ordinal(o)) == o
