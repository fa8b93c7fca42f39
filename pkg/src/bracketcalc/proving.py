"""Certificate-producing provers for the bracket calculus.

Everything here builds Certificate trees that check_derivation accepts; no
result is trusted without being checkable.  The pieces:

  * small node builders wrapping each rule, with shape assertions;
  * worm combinators: suffix projection, strict tail projection, the
    conjunction merge that pushes a smaller-headed worm inside a prefix;
  * normal-form certificates STD / DTS between a worm and its canonical
    form, recursing through the minimum entry and lifting certificates of
    down-shifted worms back up;
  * a strict-order prover that walks down the fundamental sequence of the
    larger worm (each step certified the way the descent property itself
    is proved) until it meets the smaller one;
  * the public prove_le / prove_lt / derived_mono / conj_to_worm.
"""

from __future__ import annotations

from .calculus import (
    Certificate,
    HasVariables,
    NotProvable,
    Sequent,
    SideMismatch,
    formula_worm,
    worm_formula,
)
from .fundseq import fs_bracket
from .ordinals import Ordinal, add, cmp, left_sub
from .syntax import (
    TOP,
    TOP_WORM,
    BracketFormula,
    BracketWorm,
    Conj,
    Diamond,
    Top,
    Var,
    print_worm,
)
from .worms import iota_worm, o_star, to_nf

_FS_SEARCH_CAP = 200000


# --- node builders -----------------------------------------------------------


def ax_id(f: BracketFormula) -> Certificate:
    return Certificate(Sequent(f, f), "AxId")


def ax_top(f: BracketFormula) -> Certificate:
    return Certificate(Sequent(f, TOP), "AxTop")


def ax_conj_l(l: BracketFormula, r: BracketFormula) -> Certificate:
    return Certificate(Sequent(Conj(l, r), l), "AxConjL")


def ax_conj_r(l: BracketFormula, r: BracketFormula) -> Certificate:
    return Certificate(Sequent(Conj(l, r), r), "AxConjR")


def conj_intro(c1: Certificate, c2: Certificate) -> Certificate:
    assert c1.conclusion.lhs == c2.conclusion.lhs
    return Certificate(
        Sequent(c1.conclusion.lhs, Conj(c1.conclusion.rhs, c2.conclusion.rhs)),
        "RConjIntro",
        (c1, c2),
    )


def cut(c1: Certificate, c2: Certificate) -> Certificate:
    assert c1.conclusion.rhs == c2.conclusion.lhs, "cut mismatch"
    return Certificate(
        Sequent(c1.conclusion.lhs, c2.conclusion.rhs), "RCut", (c1, c2)
    )


def mono(a: BracketWorm, b: BracketWorm, premise: Certificate, side: Certificate) -> Certificate:
    return Certificate(
        Sequent(
            Diamond(a, premise.conclusion.lhs),
            Diamond(b, premise.conclusion.rhs),
        ),
        "RMonoOuter",
        (premise,),
        side,
    )


def mono_absorb(a: BracketWorm, b: BracketWorm, premise: Certificate, side: Certificate) -> Certificate:
    return Certificate(
        Sequent(
            Diamond(a, Diamond(b, premise.conclusion.lhs)),
            Diamond(b, premise.conclusion.rhs),
        ),
        "RMonoAbsorb",
        (premise,),
        side,
    )


def rneg5(
    a: BracketWorm,
    phi: BracketFormula,
    b: BracketWorm,
    psi: BracketFormula,
    side: Certificate,
) -> Certificate:
    return Certificate(
        Sequent(
            Conj(Diamond(a, phi), Diamond(b, psi)),
            Diamond(a, Conj(phi, Diamond(b, psi))),
        ),
        "RNeg5",
        (),
        side,
    )


# --- worm helpers --------------------------------------------------------------


def wf(w: BracketWorm) -> BracketFormula:
    return worm_formula(w)


def _cons(x: BracketWorm, w: BracketWorm) -> BracketWorm:
    return BracketWorm((x,) + w.entries)


def _slice(w: BracketWorm, i: int, j=None) -> BracketWorm:
    return BracketWorm(w.entries[i:j])


def _concat_w(a: BracketWorm, b: BracketWorm) -> BracketWorm:
    return BracketWorm(a.entries + b.entries)


def side_refl(x: BracketWorm) -> Certificate:
    return ax_id(wf(x))


def side_top(a: BracketWorm) -> Certificate:
    return ax_top(wf(a))


def gt_top(a: BracketWorm) -> Certificate:
    """a |- ()T for any nonempty a."""
    assert a.entries
    tail = _slice(a, 1)
    return mono(a.entries[0], TOP_WORM, ax_top(wf(tail)), side_top(a.entries[0]))


def absorb_tt(f: BracketFormula) -> Certificate:
    """()()X |- ()X."""
    return mono_absorb(TOP_WORM, TOP_WORM, ax_id(f), side_refl(TOP_WORM))


def drop_suffix(w: BracketWorm, k: int) -> Certificate:
    """Plain w |- w[:k]; a suffix may always be forgotten."""
    c = ax_top(wf(_slice(w, k)))
    for i in range(k - 1, -1, -1):
        e = w.entries[i]
        c = mono(e, e, c, side_refl(e))
    return c


def tail_strict(w: BracketWorm, i: int) -> Certificate:
    """w |- ()w[i:] for i >= 1: the prefix strictly dominates its tail."""
    assert 1 <= i <= len(w.entries)
    suffix_f = wf(_slice(w, i))
    c = mono(w.entries[i - 1], TOP_WORM, ax_id(suffix_f), side_top(w.entries[i - 1]))
    for j in range(i - 2, -1, -1):
        c = mono(w.entries[j], TOP_WORM, c, side_top(w.entries[j]))
        c = cut(c, absorb_tt(suffix_f))
    return c


def suffix_plain(w: BracketWorm, i: int, side_for) -> Certificate:
    """Plain w |- w[i:] when every dropped entry dominates the suffix head.

    side_for(b, a) must produce a certificate for b at-or-below a; it is
    called with the suffix head against each dropped entry.
    """
    if i == 0:
        return ax_id(wf(w))
    if i == len(w.entries):
        return ax_top(wf(w))
    r = w.entries[i]
    rest_f = wf(_slice(w, i + 1))
    c = mono_absorb(w.entries[i - 1], r, ax_id(rest_f), side_for(r, w.entries[i - 1]))
    for j in range(i - 2, -1, -1):
        c = mono(w.entries[j], r, c, side_for(r, w.entries[j]))
        c = cut(c, mono_absorb(r, r, ax_id(rest_f), side_refl(r)))
    return c


def merge_push(u: BracketWorm, vz: BracketWorm, strict_side_for) -> Certificate:
    """Conj(u, vz) |- u ++ vz, pushing vz inside u one diamond at a time.

    Requires the head of vz to lie strictly below every entry of u;
    strict_side_for(v, entry) must certify that.
    """
    assert vz.entries
    v = vz.entries[0]
    zf = wf(_slice(vz, 1))
    vzf = wf(vz)
    c = Certificate(Sequent(Conj(TOP, vzf), vzf), "AxConjR")
    for j in range(len(u.entries) - 1, -1, -1):
        e = u.entries[j]
        body = wf(_slice(u, j + 1))
        step1 = rneg5(e, body, v, zf, strict_side_for(v, e))
        step2 = mono(e, e, c, side_refl(e))
        c = cut(step1, step2)
    return c


def derive_concat(cu: Certificate, cvz: Certificate, strict_side_for) -> Certificate:
    """From X |- u and X |- vz conclude X |- u ++ vz."""
    u = formula_worm(cu.conclusion.rhs)
    vz = formula_worm(cvz.conclusion.rhs)
    assert u is not None and vz is not None and vz.entries
    return cut(conj_intro(cu, cvz), merge_push(u, vz, strict_side_for))


def _strict_side(b: BracketWorm, a: BracketWorm) -> Certificate:
    """Certificate witnessing b strictly below a."""
    return GTw(a, b)


def _order_side(b: BracketWorm, a: BracketWorm) -> Certificate:
    """Certificate witnessing b at-or-below a, plain when order types match."""
    if b == a:
        return side_refl(a)
    c = cmp(o_star(b), o_star(a))
    assert c <= 0, "order side precondition violated"
    if c == 0:
        return EQw(a, b)
    return GTw(a, b)


# --- normal form certificates ---------------------------------------------------

_STD_CACHE: dict = {}
_DTS_CACHE: dict = {}


def _first_zero(w: BracketWorm):
    for i, e in enumerate(w.entries):
        if not e.entries:
            return i
    return None


def _min_entry_o(w: BracketWorm) -> Ordinal:
    best = None
    for e in w.entries:
        v = o_star(e)
        if best is None or cmp(v, best) < 0:
            best = v
    return best


def STD(w: BracketWorm) -> Certificate:
    """Plain certificate w |- to_nf(w)."""
    got = _STD_CACHE.get(w)
    if got is not None:
        return got
    n = to_nf(w)
    if w == n:
        out = ax_id(wf(w))
        _STD_CACHE[w] = out
        return out
    i = _first_zero(w)
    if i is not None:
        out = _std_grounded(w, n, i)
    else:
        out = _std_shifted(w, n)
    assert formula_worm(out.conclusion.rhs) == n
    _STD_CACHE[w] = out
    return out


def _std_grounded(w: BracketWorm, n: BracketWorm, i: int) -> Certificate:
    u = _slice(w, 0, i)
    v = _slice(w, i + 1)
    if i == 0:
        inner = STD(v)
        return mono(TOP_WORM, TOP_WORM, inner, side_refl(TOP_WORM))
    nu = to_nf(u)
    cu = cut(drop_suffix(w, i), STD(u)) if u != nu else drop_suffix(w, i)
    if not v.entries:
        # a trailing lone zero is absorbed by the infinite prefix
        assert n == nu
        return cu
    nv = to_nf(v)
    cv = tail_strict(w, i + 1)
    if v != nv:
        cv = cut(cv, mono(TOP_WORM, TOP_WORM, STD(v), side_refl(TOP_WORM)))
    c1 = derive_concat(cu, cv, lambda b, a: gt_top(a))
    w1 = _concat_w(nu, _cons(TOP_WORM, nv))
    if w1 == n:
        return c1
    # absorption: the normal form keeps only a suffix of the tail part
    if n == nu:
        return cut(c1, drop_suffix(w1, len(nu.entries)))
    k = len(nu.entries)
    assert n.entries[:k] == nu.entries and n.entries[k] == TOP_WORM
    wp = _slice(n, k + 1)
    assert nv.entries[len(nv.entries) - len(wp.entries):] == wp.entries
    f1 = drop_suffix(w1, k)
    f2 = tail_strict(w1, len(w1.entries) - len(wp.entries))
    fuse = derive_concat(f1, f2, lambda b, a: gt_top(a))
    return cut(c1, fuse)


def _std_shifted(w: BracketWorm, n: BracketWorm) -> Certificate:
    mu = _min_entry_o(w)
    w0 = BracketWorm(tuple(to_nf(e) for e in w.entries))
    hat = BracketWorm(
        tuple(iota_worm(left_sub(mu, o_star(e))) for e in w.entries)
    )
    lifted = lift_cert(mu, STD(hat))
    assert lifted.conclusion.lhs == wf(w0)
    if w == w0:
        return lifted
    bridge = ax_id(TOP)
    for e, e0 in zip(reversed(w.entries), reversed(w0.entries)):
        side = side_refl(e) if e == e0 else STD(e)
        bridge = mono(e, e0, bridge, side)
    return cut(bridge, lifted)


def DTS(w: BracketWorm) -> Certificate:
    """Plain certificate to_nf(w) |- w."""
    got = _DTS_CACHE.get(w)
    if got is not None:
        return got
    n = to_nf(w)
    if w == n:
        out = ax_id(wf(w))
        _DTS_CACHE[w] = out
        return out
    i = _first_zero(w)
    if i is not None:
        out = _dts_grounded(w, n, i)
    else:
        out = _dts_shifted(w, n)
    assert out.conclusion.lhs == wf(n) and formula_worm(out.conclusion.rhs) == w
    _DTS_CACHE[w] = out
    return out


def _dts_grounded(w: BracketWorm, n: BracketWorm, i: int) -> Certificate:
    u = _slice(w, 0, i)
    v = _slice(w, i + 1)
    if i == 0:
        return mono(TOP_WORM, TOP_WORM, DTS(v), side_refl(TOP_WORM))
    nu = to_nf(u)
    k = len(nu.entries)
    assert n.entries[:k] == nu.entries
    cu = drop_suffix(n, k)
    if u != nu:
        cu = cut(cu, DTS(u))
    if not v.entries:
        cvz = gt_top(n)
    else:
        cvz = GTw(n, v)
    return derive_concat(cu, cvz, lambda b, a: gt_top(a))


def _dts_shifted(w: BracketWorm, n: BracketWorm) -> Certificate:
    mu = _min_entry_o(w)
    w0 = BracketWorm(tuple(to_nf(e) for e in w.entries))
    hat = BracketWorm(
        tuple(iota_worm(left_sub(mu, o_star(e))) for e in w.entries)
    )
    lifted = lift_cert(mu, DTS(hat))
    assert formula_worm(lifted.conclusion.rhs) == w0
    if w0 == w:
        return lifted
    bridge = ax_id(TOP)
    for e, e0 in zip(reversed(w.entries), reversed(w0.entries)):
        side = side_refl(e) if e == e0 else DTS(e)
        bridge = mono(e0, e, bridge, side)
    return cut(lifted, bridge)


# --- certificate lifting ---------------------------------------------------------


def lift_cert(mu: Ordinal, cert: Certificate) -> Certificate:
    """Shift every diamond label of a certificate up by mu.

    Labels map to the canonical worm of mu + their order type; the ordering
    side derivations are rebuilt at the lifted level rather than lifted.
    """
    if mu.is_zero():
        return cert
    label_map: dict = {}
    formula_map: dict = {}

    def lw(x: BracketWorm) -> BracketWorm:
        got = label_map.get(x)
        if got is None:
            got = iota_worm(add(mu, o_star(x)))
            label_map[x] = got
        return got

    def lf(f: BracketFormula) -> BracketFormula:
        got = formula_map.get(id(f))
        if got is not None:
            return got
        if isinstance(f, (Top, Var)):
            out = f
        elif isinstance(f, Conj):
            out = Conj(lf(f.left), lf(f.right))
        else:
            out = Diamond(lw(f.label), lf(f.body))
        formula_map[id(f)] = out
        return out

    def go(c: Certificate) -> Certificate:
        rule = c.rule
        concl = c.conclusion
        if rule in ("AxId", "AxTop", "AxConjL", "AxConjR"):
            return Certificate(Sequent(lf(concl.lhs), lf(concl.rhs)), rule)
        if rule == "RConjIntro":
            return conj_intro(go(c.premises[0]), go(c.premises[1]))
        if rule == "RCut":
            return cut(go(c.premises[0]), go(c.premises[1]))
        if rule == "RMonoOuter":
            a, b = concl.lhs.label, concl.rhs.label
            return mono(lw(a), lw(b), go(c.premises[0]), _order_side(lw(b), lw(a)))
        if rule == "RMonoAbsorb":
            a, b = concl.lhs.label, concl.lhs.body.label
            return mono_absorb(
                lw(a), lw(b), go(c.premises[0]), _order_side(lw(b), lw(a))
            )
        if rule == "RNeg5":
            a = concl.lhs.left.label
            b = concl.lhs.right.label
            return rneg5(
                lw(a),
                lf(concl.lhs.left.body),
                lw(b),
                lf(concl.lhs.right.body),
                _strict_side(lw(b), lw(a)),
            )
        raise AssertionError(rule)

    return go(cert)


# --- order provers ----------------------------------------------------------------

_GT_CACHE: dict = {}
_EQ_CACHE: dict = {}


def EQw(a: BracketWorm, b: BracketWorm) -> Certificate:
    """Plain a |- b for worms of equal order type."""
    if a == b:
        return ax_id(wf(a))
    got = _EQ_CACHE.get((a, b))
    if got is not None:
        return got
    assert cmp(o_star(a), o_star(b)) == 0
    out = cut(STD(a), DTS(b))
    _EQ_CACHE[(a, b)] = out
    return out


def GTw(a: BracketWorm, b: BracketWorm) -> Certificate:
    """a |- ()b for worms with the order type of b strictly below a's."""
    got = _GT_CACHE.get((a, b))
    if got is not None:
        return got
    assert cmp(o_star(b), o_star(a)) < 0
    if not b.entries:
        out = gt_top(a)
        _GT_CACHE[(a, b)] = out
        return out
    ob = o_star(b)
    c = None
    cur = a
    while True:
        nxt = None
        for n in range(_FS_SEARCH_CAP):
            cand = fs_bracket(cur, n)
            if cmp(o_star(cand), ob) >= 0:
                nxt = cand
                break
        if nxt is None:
            raise RuntimeError("fundamental sequence search exhausted")
        step = agtan(cur, n)
        if c is None:
            c = step
        else:
            c = cut(c, mono(TOP_WORM, TOP_WORM, step, side_refl(TOP_WORM)))
            c = cut(c, absorb_tt(wf(nxt)))
        cur = nxt
        if cmp(o_star(cur), ob) == 0:
            break
    if cur != b:
        c = cut(c, mono(TOP_WORM, TOP_WORM, EQw(cur, b), side_refl(TOP_WORM)))
    _GT_CACHE[(a, b)] = c
    return c


def agtan(a: BracketWorm, n: int) -> Certificate:
    """The descent certificate a |- ()a{n}, built the way the descent
    property is established: replace the head by its own step, then fold
    the worm onto itself n more times and weaken the leading entry."""
    e = a.entries
    assert e
    if not e[0].entries:
        # a = () rest steps to rest, and a is literally () rest
        return ax_id(wf(a))
    a1 = e[0]
    o1 = o_star(a1)
    l = len(e)
    for i in range(1, len(e)):
        if cmp(o_star(e[i]), o1) < 0:
            l = i
            break
    a1n = fs_bracket(a1, n)
    r0 = agtan(a1, n)
    rest = _slice(a, 1)
    s0 = mono(a1, a1n, ax_id(wf(rest)), r0)
    pref = _slice(a, 0, l)
    proj = drop_suffix(a, l)

    side_cache: dict = {}

    def strict_side(v: BracketWorm, u: BracketWorm) -> Certificate:
        assert v == a1n
        if u == a1:
            return r0
        got = side_cache.get(u)
        if got is None:
            got = GTw(u, a1n)
            side_cache[u] = got
        return got

    q = s0
    for _ in range(n):
        c1 = derive_concat(proj, q, strict_side)
        w2 = _concat_w(pref, formula_worm(q.conclusion.rhs))
        s = mono(a1, a1n, ax_id(wf(_slice(w2, 1))), r0)
        q = cut(c1, s)
    final = formula_worm(q.conclusion.rhs)
    assert final == fs_bracket(a, n)
    c_a1 = mono(a1, a1, ax_top(wf(rest)), side_refl(a1))
    c2 = derive_concat(c_a1, q, strict_side)
    c3 = mono(a1, TOP_WORM, ax_id(wf(final)), side_top(a1))
    return cut(c2, c3)


# --- public provers ------------------------------------------------------------


def prove_lt(a: BracketWorm, b: BracketWorm) -> Certificate:
    """A checkable derivation of a |- ()b; requires b strictly below a."""
    if cmp(o_star(b), o_star(a)) >= 0:
        raise NotProvable("%s is not strictly below %s" % (print_worm(b), print_worm(a)))
    return GTw(a, b)


def prove_le(a: BracketWorm, b: BracketWorm) -> Certificate:
    """A checkable derivation of a |- b or a |- ()b; requires b at-or-below a."""
    c = cmp(o_star(b), o_star(a))
    if c > 0:
        raise NotProvable("%s is not at-or-below %s" % (print_worm(b), print_worm(a)))
    if not b.entries and c < 0:
        return ax_top(wf(a))
    if c == 0:
        return EQw(a, b)
    return GTw(a, b)


def derived_mono(sides) -> Certificate:
    """Entrywise monotonicity: from sides a_i at-or-below b_i conclude
    (b_0)...(b_k) |- (a_0)...(a_k).

    Each side must conclude b_i |- a_i or b_i |- ()a_i.  A right side that
    begins with a top entry is read as the strict form, except that a
    reflexive side b_i |- b_i always means a_i = b_i.
    """
    pairs = []
    for s in sides:
        b = formula_worm(s.conclusion.lhs)
        if b is None:
            raise SideMismatch("side left side is not a worm")
        r = formula_worm(s.conclusion.rhs)
        if r is None:
            raise SideMismatch("side right side is not a worm")
        if r != b and r.entries and r.entries[0] == TOP_WORM:
            a = _slice(r, 1)
        else:
            a = r
        pairs.append((a, b, s))
    c = ax_id(TOP)
    for a, b, s in reversed(pairs):
        c = mono(b, a, c, s)
    return c


# --- conjunction normalization ----------------------------------------------------


def _conj_comm(x: BracketFormula, y: BracketFormula) -> Certificate:
    return conj_intro(ax_conj_r(x, y), ax_conj_l(x, y))


def merge_worms(a: BracketWorm, b: BracketWorm):
    """A worm c with certificates Conj(a, b) |- c and c |- Conj(a, b)."""
    fa, fb = wf(a), wf(b)
    if not a.entries:
        return b, ax_conj_r(fa, fb), conj_intro(ax_top(fb), ax_id(fb))
    if not b.entries:
        return a, ax_conj_l(fa, fb), conj_intro(ax_id(fa), ax_top(fa))
    oa1, ob1 = o_star(a.entries[0]), o_star(b.entries[0])
    hc = cmp(oa1, ob1)
    if hc < 0:
        c, fwd2, back2 = merge_worms(b, a)
        fwd = cut(_conj_comm(fa, fb), fwd2)
        back = cut(back2, _conj_comm(fb, fa))
        return c, fwd, back
    if hc > 0:
        return _merge_strict(a, b)
    if oa1.is_zero():
        return _merge_grounded(a, b)
    return _merge_level(a, b, oa1)


def _merge_strict(a: BracketWorm, b: BracketWorm):
    # head of a strictly dominates head of b: push b inside a one level
    a1 = a.entries[0]
    b1 = b.entries[0]
    a_rest = _slice(a, 1)
    fa, fb = wf(a), wf(b)
    m, f2, b2 = merge_worms(a_rest, b)
    c = _cons(a1, m)
    s = _strict_side(b1, a1)
    step1 = rneg5(a1, wf(a_rest), b1, wf(_slice(b, 1)), s)
    fwd = cut(step1, mono(a1, a1, f2, side_refl(a1)))
    e_l = cut(b2, ax_conj_l(wf(a_rest), fb))
    e_r = cut(b2, ax_conj_r(wf(a_rest), fb))
    back_a = mono(a1, a1, e_l, side_refl(a1))
    back_b = cut(
        mono(a1, a1, e_r, side_refl(a1)),
        mono_absorb(a1, b1, ax_id(wf(_slice(b, 1))), s),
    )
    return c, fwd, conj_intro(back_a, back_b)


def _merge_grounded(a: BracketWorm, b: BracketWorm):
    # both worms start with a zero entry: the order-type-larger side wins
    fa, fb = wf(a), wf(b)
    if cmp(o_star(a), o_star(b)) >= 0:
        big, small, fwd = a, b, ax_conj_l(fa, fb)
        back_small = _dominate_grounded(big, small)
        back = conj_intro(ax_id(wf(big)), back_small)
    else:
        big, small, fwd = b, a, ax_conj_r(fa, fb)
        back_small = _dominate_grounded(big, small)
        back = conj_intro(back_small, ax_id(wf(big)))
    return big, fwd, back


def _dominate_grounded(big: BracketWorm, small: BracketWorm) -> Certificate:
    # plain big |- small for a zero-headed small at-or-below big
    if cmp(o_star(big), o_star(small)) == 0:
        return EQw(big, small)
    return GTw(big, _slice(small, 1))


def _merge_level(a: BracketWorm, b: BracketWorm, alpha: Ordinal):
    # equal nonzero heads: merge the shifted prefixes, then the remainders
    fa, fb = wf(a), wf(b)

    def split_at(w: BracketWorm) -> int:
        for i, e in enumerate(w.entries):
            if cmp(o_star(e), alpha) < 0:
                return i
        return len(w.entries)

    ia, ib = split_at(a), split_at(b)
    p, r = _slice(a, 0, ia), _slice(a, ia)
    q, s = _slice(b, 0, ib), _slice(b, ib)
    p0 = BracketWorm(tuple(to_nf(e) for e in p.entries))
    q0 = BracketWorm(tuple(to_nf(e) for e in q.entries))
    p_hat = BracketWorm(tuple(iota_worm(left_sub(alpha, o_star(e))) for e in p.entries))
    q_hat = BracketWorm(tuple(iota_worm(left_sub(alpha, o_star(e))) for e in q.entries))
    m_hat, f_hat, b_hat = merge_worms(p_hat, q_hat)
    m = BracketWorm(tuple(iota_worm(add(alpha, o_star(e))) for e in m_hat.entries))
    f_lift = lift_cert(alpha, f_hat)
    b_lift = lift_cert(alpha, b_hat)
    assert f_lift.conclusion.lhs == Conj(wf(p0), wf(q0))
    assert formula_worm(f_lift.conclusion.rhs) == m

    def bridge_fwd(w, w0):
        c = ax_id(TOP)
        for e, e0 in zip(reversed(w.entries), reversed(w0.entries)):
            c = mono(e, e0, c, side_refl(e) if e == e0 else STD(e))
        return c

    def bridge_back(w, w0):
        c = ax_id(TOP)
        for e, e0 in zip(reversed(w.entries), reversed(w0.entries)):
            c = mono(e0, e, c, side_refl(e) if e == e0 else DTS(e))
        return c

    def proj_side(v, u):
        return _order_side(v, u) if cmp(o_star(v), o_star(u)) == 0 else _strict_side(v, u)

    c_p = cut(ax_conj_l(fa, fb), drop_suffix(a, ia))
    if p != p0:
        c_p = cut(c_p, bridge_fwd(p, p0))
    c_q = cut(ax_conj_r(fa, fb), drop_suffix(b, ib))
    if q != q0:
        c_q = cut(c_q, bridge_fwd(q, q0))
    c_m = cut(conj_intro(c_p, c_q), f_lift)

    k, fk, bk = merge_worms(r, s)
    if not k.entries:
        c_worm = m
        fwd = c_m
    else:
        c_r = cut(ax_conj_l(fa, fb), suffix_plain(a, ia, proj_side))
        c_s = cut(ax_conj_r(fa, fb), suffix_plain(b, ib, proj_side))
        c_k = cut(conj_intro(c_r, c_s), fk)
        c_worm = _concat_w(m, k)
        fwd = derive_concat(c_m, c_k, _strict_side)

    # backwards: project the merged worm onto each conjunct
    d_m = drop_suffix(c_worm, len(m.entries))
    d_pq = cut(d_m, b_lift)

    def back_side(w, w0, proj_ax):
        piece = cut(d_pq, proj_ax)
        if w != w0:
            piece = cut(piece, bridge_back(w, w0))
        return piece

    back_p = back_side(p, p0, ax_conj_l(wf(p0), wf(q0)))
    back_q = back_side(q, q0, ax_conj_r(wf(p0), wf(q0)))
    if not k.entries:
        back_a = back_p if not r.entries else None
        back_b = back_q if not s.entries else None
        assert back_a is not None and back_b is not None
    else:
        d_k = suffix_plain(c_worm, len(m.entries), proj_side)
        d_rs = cut(d_k, bk)
        back_a = back_p
        if r.entries:
            c_r_back = cut(d_rs, ax_conj_l(wf(r), wf(s)))
            back_a = derive_concat(back_p, c_r_back, _strict_side)
        back_b = back_q
        if s.entries:
            c_s_back = cut(d_rs, ax_conj_r(wf(r), wf(s)))
            back_b = derive_concat(back_q, c_s_back, _strict_side)
    back = conj_intro(back_a, back_b)
    return c_worm, fwd, back


def conj_to_worm(phi: BracketFormula):
    """Normalize a variable-free formula to a single worm.

    Returns (worm, fwd, back) with checkable certificates phi |- worm and
    worm |- phi.
    """
    if isinstance(phi, Var):
        raise HasVariables("formula contains variables")
    if isinstance(phi, Top):
        return TOP_WORM, ax_id(TOP), ax_id(TOP)
    if isinstance(phi, Diamond):
        cw, f, b = conj_to_worm(phi.body)
        return (
            _cons(phi.label, cw),
            mono(phi.label, phi.label, f, side_refl(phi.label)),
            mono(phi.label, phi.label, b, side_refl(phi.label)),
        )
    if isinstance(phi, Conj):
        cx, fx, bx = conj_to_worm(phi.left)
        cy, fy, by = conj_to_worm(phi.right)
        cw, mf, mb = merge_worms(cx, cy)
        fwd = cut(
            conj_intro(
                cut(ax_conj_l(phi.left, phi.right), fx),
                cut(ax_conj_r(phi.left, phi.right), fy),
            ),
            mf,
        )
        back = conj_intro(
            cut(cut(mb, ax_conj_l(wf(cx), wf(cy))), bx),
            cut(cut(mb, ax_conj_r(wf(cx), wf(cy))), by),
        )
        return cw, fwd, back
    raise TypeError(phi)
