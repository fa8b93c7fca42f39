"""Fundamental sequences, step-down traces, and the growth witnesses."""

import json
import random

import pytest

from bracketcalc import (
    OMEGA,
    ONE,
    ZERO,
    BudgetExhausted,
    Found,
    F_witness,
    G_witness,
    a_seq,
    add,
    cmp,
    decide_lt,
    descend,
    fs_bracket,
    fs_veblen,
    gamma,
    nat,
    o_star,
    omega_pow,
    parse_ordinal,
    parse_worm,
    print_ordinal,
    print_worm,
    step_iter,
    uparrow_bracket,
    veblen,
    xhat,
)
from corpus import corpus, corpus_ordinals

W = parse_worm
O = parse_ordinal
EPS0 = veblen(ONE, ZERO)


# --- bracket steps ---------------------------------------------------------------


def test_fs_bracket_examples():
    assert fs_bracket(W("()()"), 2) == W("()")
    assert fs_bracket(W("(())"), 1) == W("()()")
    assert fs_bracket(W("T"), 7) == W("T")
    # case 3 with a non-minimal head: the split lands at the smaller entry
    assert fs_bracket(W("(())()"), 1) == W("()()()")


def test_fs_bracket_descent():
    for a in corpus(6):
        if not a.entries:
            continue
        for n in range(6):
            b = fs_bracket(a, n)
            assert decide_lt(a, b), (print_worm(a), n, print_worm(b))


def test_step_iter_hand_trace():
    tr = step_iter(W("(())"), 10)
    assert tr.terminated and tr.steps_used == 3
    assert [print_worm(x) for x in tr.steps] == ["(())", "()()", "()", "T"]


def test_step_iter_examples():
    tr = step_iter(W("T"), 0)
    assert tr.terminated and tr.steps_used == 0
    tr = step_iter(W("((()))"), 100)
    assert not tr.terminated and tr.steps_used == 100


def test_step_iter_windows():
    tr = step_iter(W("()()()()()()"), 100, window=2)
    assert tr.terminated and tr.steps_used == 6
    assert not tr.complete
    assert [print_worm(x) for x in tr.head] == ["()()()()()()", "()()()()()", "()()()()"]
    assert [print_worm(x) for x in tr.tail] == ["()", "T"]
    obj = tr.to_json_obj()
    assert obj["steps_used"] == 6 and obj["terminated"] is True
    assert obj["head"][0] == "()()()()()()"
    json.dumps(obj)


def test_step_iter_budget_zero():
    tr = step_iter(W("()"), 0)
    assert not tr.terminated and tr.steps_used == 0
    with pytest.raises(ValueError):
        step_iter(W("()"), -1)


# --- ordinal steps ----------------------------------------------------------------


def test_xhat():
    assert xhat(3, ONE) == 4
    assert xhat(3, OMEGA) == 1
    assert xhat(0, ZERO) == 1


def test_fs_veblen_examples():
    assert fs_veblen(ONE, 5) == ZERO
    assert fs_veblen(OMEGA, 1) == nat(3)
    assert fs_veblen(EPS0, 1) == OMEGA


def test_fs_veblen_all_cases():
    # additively decomposable: peel the tail
    assert fs_veblen(add(OMEGA, nat(2)), 9) == add(OMEGA, ONE)
    assert fs_veblen(add(omega_pow(nat(2)), OMEGA), 1) == add(omega_pow(nat(2)), nat(3))
    # successor exponent of the base case
    assert fs_veblen(omega_pow(nat(2)), 2) == O("phi(0,1)+phi(0,1)+phi(0,1)+phi(0,1)")
    # limit exponent of the base case
    assert fs_veblen(omega_pow(OMEGA), 3) == omega_pow(nat(5))
    # zero argument at a positive level
    assert fs_veblen(veblen(nat(2), ZERO), 1) == veblen(ONE, veblen(ONE, ZERO))
    # successor argument at a positive level
    assert fs_veblen(veblen(ONE, ONE), 1) == veblen(
        ZERO, veblen(ZERO, add(EPS0, ONE))
    )
    # limit argument
    assert fs_veblen(veblen(ONE, OMEGA), 4) == veblen(ONE, nat(6))
    # limit level: the level itself steps down, applied once
    assert fs_veblen(veblen(OMEGA, ZERO), 2) == veblen(nat(4), ZERO)


def test_fs_veblen_descent():
    for xi in corpus_ordinals(7):
        if xi.is_zero():
            continue
        for x in range(6):
            assert cmp(fs_veblen(xi, x), xi) < 0


def test_descend_hand_trace():
    tr = descend(OMEGA, 10)
    assert tr.terminated and tr.steps_used == 4
    assert [print_ordinal(o) for o in tr.steps] == ["phi(0,1)", "3", "2", "1", "0"]


def test_descend_examples():
    assert descend(ZERO, 0).terminated
    tr = descend(ONE, 5)
    assert tr.terminated and tr.steps_used == 1
    obj = descend(OMEGA, 10).to_json_obj()
    assert obj["head"] == ["phi(0,1)", "3", "2", "1", "0"]


def test_bachmann_property():
    vals = corpus_ordinals(6)
    for alpha in vals:
        if alpha.is_zero():
            continue
        for k in range(4):
            ak = fs_veblen(alpha, k)
            for beta in vals:
                if cmp(ak, beta) < 0 and cmp(beta, alpha) < 0:
                    assert cmp(ak, fs_veblen(beta, 1)) <= 0, (
                        print_ordinal(alpha),
                        k,
                        print_ordinal(beta),
                    )


def test_majorization():
    # sequences squeezed between the descent and the value majorize it
    rng = random.Random(33)
    vals = [o for o in corpus_ordinals(6) if not o.is_zero()]
    for start in rng.sample(vals, 30):
        seq = [start]
        for i in range(6):
            lo = fs_veblen(seq[-1], i + 1)
            seq.append(lo if rng.random() < 0.5 else seq[-1])
        ref = start
        for i in range(1, len(seq)):
            ref = fs_veblen(ref, i)
            assert cmp(seq[i], ref) >= 0


@pytest.mark.xfail(
    strict=True,
    reason="the claimed inequality o*((a↑a){k}) >= o*(a↑(a{k})) fails under "
    "the defining translation: shifting before stepping can be absorbed by "
    "large entries while shifting afterwards is not; see the pinned "
    "counterexample test below",
)
def test_uparrow_step_commutation_as_claimed():
    rng = random.Random(34)
    worms = [w for w in corpus(5)]
    for alpha in (ONE, OMEGA):
        for a in rng.sample(worms, 40):
            for k in range(4):
                lhs = o_star(fs_bracket(uparrow_bracket(alpha, a), k))
                rhs = o_star(uparrow_bracket(alpha, fs_bracket(a, k)))
                assert cmp(lhs, rhs) >= 0, (print_worm(a), k)


def test_uparrow_step_counterexample_pinned():
    # minimal witness against the claimed commutation inequality: the shift
    # of 1 is absorbed by the omega entry, so stepping first collapses to
    # omega while shifting the stepped worm reaches omega**omega
    a = W("((()))")
    assert uparrow_bracket(ONE, a) == a
    lhs = o_star(fs_bracket(uparrow_bracket(ONE, a), 0))
    rhs = o_star(uparrow_bracket(ONE, fs_bracket(a, 0)))
    assert lhs == OMEGA
    assert rhs == omega_pow(OMEGA)
    assert cmp(lhs, rhs) < 0


def test_step_vs_descent_inequality():
    # the ordinal descent never overtakes the bracket descent of the primed worm
    bound = omega_pow(OMEGA)
    for a in corpus(5):
        xi = o_star(a)
        if cmp(xi, bound) > 0:
            continue
        primed = W("()" ) if not a.entries else parse_worm("()" + print_worm(a))
        for k in (2, 3):
            tr = descend(xi, k)
            val = tr.head[-1] if tr.complete else None
            assert val is not None
            cur = primed
            for i in range(1, k + 2):
                cur = fs_bracket(cur, i)
            assert cmp(val, o_star(cur)) <= 0, (print_worm(a), k)


# --- growth functions -----------------------------------------------------------------


def test_bracket_principle_desk_scale():
    from bracketcalc import mul_nat

    bound = mul_nat(OMEGA, 3)
    checked = 0
    for a in corpus(8):
        if cmp(o_star(a), bound) < 0:
            tr = step_iter(a, 10**6)
            assert tr.terminated, print_worm(a)
            checked += 1
    assert checked > 50
    # larger worms exhaust the budget without crashing; the deeper one gets
    # a smaller budget because its entry order types grow into long sums
    for text, budget in (("((()))", 2000), ("(((())))", 60)):
        tr = step_iter(W(text), budget)
        assert not tr.terminated and tr.steps_used == budget


def test_gamma_values():
    assert gamma(0) == ZERO
    assert gamma(1) == ONE
    assert gamma(2) == EPS0
    assert gamma(3) == veblen(EPS0, ZERO)


def test_a_seq():
    assert a_seq(0) == W("T")
    assert a_seq(1) == W("()")
    assert a_seq(2) == W("((()))")
    assert a_seq(3) == W("(((())))")
    assert o_star(a_seq(2)) == gamma(2)
    assert o_star(a_seq(3)) == gamma(3)


def test_F_witness_small():
    assert F_witness(0, 0) == Found(0)
    assert F_witness(1, 5) == Found(1)
    assert F_witness(1, 0) == BudgetExhausted(0)


def test_F_witness_two():
    # the descent from gamma(2) = phi(1,0) collapses quickly: its first step
    # lands on phi(0,1) and the trace is frozen here from the case analysis
    expected = ["phi(1,0)", "phi(0,1)", "4", "3", "2", "1", "0"]
    tr = descend(gamma(2), 1000)
    assert tr.terminated
    assert [print_ordinal(o) for o in tr.steps] == expected
    assert F_witness(2, 1000) == Found(6)


def test_G_witness_small():
    assert G_witness(0, 10) == Found(0)
    assert G_witness(1, 10) == Found(1)
    assert G_witness(1, 1) == BudgetExhausted(1)


def test_F_le_G_where_found():
    for m in (0, 1):
        f = F_witness(m, 100)
        g = G_witness(m, 100)
        assert isinstance(f, Found) and isinstance(g, Found)
        assert f.steps <= g.steps
