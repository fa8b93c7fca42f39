"""Worms with ordinal entries, order types, and bracket translations.

A worm is a plain tuple of ordinals: <x1>...<xn>T is (x1, ..., xn) and the
empty tuple is top.  Most things here are thin recursions over the ordinal
engine; results are memoized because the same small worms come up constantly
in tests and in the certificate prover.
"""

from __future__ import annotations

from .ordinals import (
    ONE,
    ZERO,
    Ordinal,
    add,
    cmp,
    hyper_exp,
    left_sub,
    omega_pow,
)
from .syntax import TOP, BracketFormula, BracketWorm, Conj, Diamond, Top, Var

Worm = tuple  # tuple[Ordinal, ...]


class RCFormula:
    __slots__ = ()


class RTop(RCFormula):
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return isinstance(other, RTop)

    def __hash__(self):
        return hash(RTop)

    def __repr__(self):
        return "RTop"


RTOP = RTop()


class RVar(RCFormula):
    __slots__ = ("index",)

    def __init__(self, index: int):
        if index < 1:
            raise ValueError("variable index must be positive")
        self.index = index

    def __eq__(self, other):
        return isinstance(other, RVar) and self.index == other.index

    def __hash__(self):
        return hash(("rvar", self.index))

    def __repr__(self):
        return "RVar(%d)" % self.index


class RConj(RCFormula):
    __slots__ = ("left", "right")

    def __init__(self, left: RCFormula, right: RCFormula):
        self.left = left
        self.right = right

    def __eq__(self, other):
        return (
            isinstance(other, RConj)
            and self.left == other.left
            and self.right == other.right
        )

    def __hash__(self):
        return hash(("rconj", self.left, self.right))

    def __repr__(self):
        return "RConj(%r, %r)" % (self.left, self.right)


class RDia(RCFormula):
    __slots__ = ("index", "body")

    def __init__(self, index: Ordinal, body: RCFormula):
        self.index = index
        self.body = body

    def __eq__(self, other):
        return (
            isinstance(other, RDia)
            and self.index == other.index
            and self.body == other.body
        )

    def __hash__(self):
        return hash(("rdia", self.index, self.body))

    def __repr__(self):
        return "RDia(%r, %r)" % (self.index, self.body)


def signature(f: RCFormula) -> frozenset:
    """The set of modality indices occurring in f."""
    if isinstance(f, (RTop, RVar)):
        return frozenset()
    if isinstance(f, RConj):
        return signature(f.left) | signature(f.right)
    if isinstance(f, RDia):
        return frozenset((f.index,)) | signature(f.body)
    raise TypeError(f)


def concat(a: Worm, b: Worm) -> Worm:
    return a + b


def splice(b: Worm, lam: Ordinal, a: Worm) -> Worm:
    return b + (lam,) + a


def uparrow(lam: Ordinal, a: Worm) -> Worm:
    """Add lam on the left of every entry."""
    if lam.is_zero():
        return a
    return tuple(add(lam, e) for e in a)


# Memo tables below hold deterministic values keyed by immutable inputs, so
# concurrent readers and writers can only ever race on storing equal values.
_ORDER_CACHE: dict = {}


def _segment_order(seg: Worm) -> Ordinal:
    # order type of a zero-free worm (possibly empty)
    if not seg:
        return ZERO
    mu = seg[0]
    for e in seg[1:]:
        if cmp(e, mu) < 0:
            mu = e
    return hyper_exp(mu, order_type(tuple(left_sub(mu, e) for e in seg)))


def order_type(w: Worm) -> Ordinal:
    """The order type o(w) of a worm below Gamma_0.

    Zero entries split the worm into zero-free segments; each zero stands
    for one successor step and segments attach by ordinal addition, the
    rightmost segment being the most significant.
    """
    if not w:
        return ZERO
    cached = _ORDER_CACHE.get(w)
    if cached is not None:
        return cached
    segs = []
    cur = []
    for e in w:
        if e.is_zero():
            segs.append(tuple(cur))
            cur = []
        else:
            cur.append(e)
    segs.append(tuple(cur))
    val = _segment_order(segs[-1])
    for seg in segs[-2::-1]:
        val = add(val, add(ONE, _segment_order(seg)))
    _ORDER_CACHE[w] = val
    return val


_O_STAR_CACHE: dict = {}


def star(a: BracketWorm) -> Worm:
    """Replace every bracket entry by its order type."""
    return tuple(o_star(e) for e in a.entries)


def o_star(a: BracketWorm) -> Ordinal:
    cached = _O_STAR_CACHE.get(a)
    if cached is None:
        cached = order_type(star(a))
        _O_STAR_CACHE[a] = cached
    return cached


def tau(f: BracketFormula) -> RCFormula:
    """Translate a bracket formula into an ordinal-indexed formula."""
    if isinstance(f, Top):
        return RTOP
    if isinstance(f, Var):
        return RVar(f.index)
    if isinstance(f, Conj):
        return RConj(tau(f.left), tau(f.right))
    if isinstance(f, Diamond):
        return RDia(o_star(f.label), tau(f.body))
    raise TypeError(f)


def _block(level: Ordinal, arg: Ordinal) -> Worm:
    # worm for one infinite principal value phi_level(arg)
    if level.is_zero():
        return uparrow(ONE, worm_of_ordinal(arg))
    return uparrow(omega_pow(level), worm_of_ordinal(add(ONE, arg)))


def worm_of_ordinal(x: Ordinal) -> Worm:
    """The canonical worm whose order type is x.

    Summands of x become zero-free blocks joined by zero entries, one zero
    per finite unit, built right to left so the sum rule for order types
    reproduces x exactly.
    """
    out: Worm = ()
    for t in x.terms:
        # most significant summand first; each smaller block is prepended,
        # with a zero glue in front of what is already built
        blk = _block(t.level, t.arg)
        out = blk + ((ZERO,) + out if out else ())
    return (ZERO,) * x.fin + out


_IOTA_CACHE: dict = {}


def worm_iota(w: Worm) -> BracketWorm:
    """Translate an ordinal worm back to brackets, entry by entry."""
    return BracketWorm(tuple(iota_worm(e) for e in w))


def iota_worm(x: Ordinal) -> BracketWorm:
    """The canonical bracket worm denoting the ordinal x."""
    cached = _IOTA_CACHE.get(x)
    if cached is None:
        cached = worm_iota(worm_of_ordinal(x))
        _IOTA_CACHE[x] = cached
    return cached


def iota(f: RCFormula) -> BracketFormula:
    """Translate an ordinal-indexed formula into brackets."""
    if isinstance(f, RTop):
        return TOP
    if isinstance(f, RVar):
        return Var(f.index)
    if isinstance(f, RConj):
        return Conj(iota(f.left), iota(f.right))
    if isinstance(f, RDia):
        return Diamond(iota_worm(f.index), iota(f.body))
    raise TypeError(f)


def to_nf(a: BracketWorm) -> BracketWorm:
    """The canonical normal form with the same order type."""
    return iota_worm(o_star(a))


_H_CACHE = [ZERO]


def h(n: int) -> Ordinal:
    """The nesting bound function: h(0) = 0, h(n+1) = e**h(n) applied to 1."""
    while len(_H_CACHE) <= n:
        _H_CACHE.append(hyper_exp(_H_CACHE[-1], ONE))
    return _H_CACHE[n]


def uparrow_bracket(alpha: Ordinal, a: BracketWorm) -> BracketWorm:
    """Shift every top-level entry of a up by alpha, renormalizing entries."""
    return worm_iota(uparrow(alpha, star(a)))


def print_ordinal_worm(w: Worm) -> str:
    """Debug rendering of an ordinal-entry worm: <ord><ord>...T."""
    from .ordinals import print_ordinal

    return "".join("<%s>" % print_ordinal(e) for e in w) + "T"
