"""The bracket calculus as checkable derivation certificates.

A certificate is a derivation tree tagged with one of nine rules.  The two
monotonicity rules and the conjunction-absorption rule carry an embedded
side derivation establishing the required ordering fact between bracket
worms; the checker re-verifies those side derivations recursively, so a
valid certificate is self-contained.

Rule tags:
  AxId          phi |- phi
  AxTop         phi |- T
  AxConjL       phi & psi |- phi
  AxConjR       phi & psi |- psi
  RConjIntro    from phi |- psi and phi |- chi:  phi |- psi & chi
  RCut          from phi |- psi and psi |- chi:  phi |- chi
  RMonoOuter    from phi |- psi, side b <= a:    (a)phi |- (b)psi
  RMonoAbsorb   from phi |- psi, side b <= a:    (a)(b)phi |- (b)psi
  RNeg5         side b < a:   (a)phi & (b)psi |- (a)[phi & (b)psi]

A side for the monotonicity rules concludes a |- b or a |- ()b; the side
for RNeg5 must conclude a |- ()b.
"""

from __future__ import annotations

import json

from .ordinals import cmp
from .syntax import (
    TOP,
    TOP_WORM,
    BracketFormula,
    BracketWorm,
    Conj,
    Diamond,
    Top,
    Var,
    parse_formula,
    print_formula,
)
from .worms import o_star

RULES = (
    "AxId",
    "AxTop",
    "AxConjL",
    "AxConjR",
    "RConjIntro",
    "RCut",
    "RMonoOuter",
    "RMonoAbsorb",
    "RNeg5",
)

_ARITY = {
    "AxId": 0,
    "AxTop": 0,
    "AxConjL": 0,
    "AxConjR": 0,
    "RConjIntro": 2,
    "RCut": 2,
    "RMonoOuter": 1,
    "RMonoAbsorb": 1,
    "RNeg5": 0,
}

_NEEDS_SIDE = {"RMonoOuter", "RMonoAbsorb", "RNeg5"}


class NotProvable(ValueError):
    pass


class SideMismatch(ValueError):
    pass


class HasVariables(ValueError):
    pass


class Sequent:
    __slots__ = ("lhs", "rhs", "_hash")

    def __init__(self, lhs: BracketFormula, rhs: BracketFormula):
        self.lhs = lhs
        self.rhs = rhs
        self._hash = hash((hash(lhs), hash(rhs)))

    def __eq__(self, other):
        if not isinstance(other, Sequent):
            return NotImplemented
        return self._hash == other._hash and self.lhs == other.lhs and self.rhs == other.rhs

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "%s |- %s" % (print_formula(self.lhs), print_formula(self.rhs))


class Certificate:
    __slots__ = ("conclusion", "rule", "premises", "side")

    def __init__(self, conclusion: Sequent, rule: str, premises: tuple = (), side=None):
        if rule not in _ARITY:
            raise ValueError("unknown rule %r" % rule)
        self.conclusion = conclusion
        self.rule = rule
        self.premises = premises
        self.side = side

    def __repr__(self):
        return "Certificate(%r, %s)" % (self.conclusion, self.rule)


class CheckResult:
    __slots__ = ("valid", "path", "reason")

    def __init__(self, valid: bool, path: str = "", reason: str = ""):
        self.valid = valid
        self.path = path
        self.reason = reason

    def __bool__(self):
        return self.valid

    def __repr__(self):
        if self.valid:
            return "Valid"
        return "Invalid(%s: %s)" % (self.path, self.reason)


VALID = CheckResult(True)


def worm_formula(w: BracketWorm) -> BracketFormula:
    """The worm as a formula: a chain of diamonds ending in top."""
    f: BracketFormula = TOP
    for e in reversed(w.entries):
        f = Diamond(e, f)
    return f


def formula_worm(f: BracketFormula):
    """The worm a formula denotes, or None for non-worm formulas."""
    entries = []
    while True:
        if isinstance(f, Top):
            return BracketWorm(tuple(entries))
        if not isinstance(f, Diamond):
            return None
        entries.append(f.label)
        f = f.body


def has_variables(f: BracketFormula) -> bool:
    if isinstance(f, Var):
        return True
    if isinstance(f, Conj):
        return has_variables(f.left) or has_variables(f.right)
    if isinstance(f, Diamond):
        return has_variables(f.body)
    return False


def _side_shape(side_concl: Sequent, a: BracketWorm, b: BracketWorm):
    """'plain', 'strict', or None: how the side relates worms a and b."""
    if side_concl.lhs != worm_formula(a):
        return None
    wb = worm_formula(b)
    if side_concl.rhs == Diamond(TOP_WORM, wb):
        return "strict"
    if side_concl.rhs == wb:
        return "plain"
    return None


def _check_node(c: Certificate):
    """Schema check for one node; returns a reason string or None."""
    concl = c.conclusion
    rule = c.rule
    if len(c.premises) != _ARITY[rule]:
        return "rule %s expects %d premises" % (rule, _ARITY[rule])
    if (c.side is not None) != (rule in _NEEDS_SIDE):
        return "rule %s %s a side derivation" % (
            rule,
            "requires" if rule in _NEEDS_SIDE else "does not take",
        )
    if rule == "AxId":
        if concl.lhs != concl.rhs:
            return "AxId conclusion must have equal sides"
        return None
    if rule == "AxTop":
        if not isinstance(concl.rhs, Top):
            return "AxTop right side must be T"
        return None
    if rule == "AxConjL":
        if not (isinstance(concl.lhs, Conj) and concl.lhs.left == concl.rhs):
            return "AxConjL must project the left conjunct"
        return None
    if rule == "AxConjR":
        if not (isinstance(concl.lhs, Conj) and concl.lhs.right == concl.rhs):
            return "AxConjR must project the right conjunct"
        return None
    if rule == "RConjIntro":
        p1, p2 = c.premises
        if p1.conclusion.lhs != concl.lhs or p2.conclusion.lhs != concl.lhs:
            return "RConjIntro premises must share the conclusion's left side"
        if concl.rhs != Conj(p1.conclusion.rhs, p2.conclusion.rhs):
            return "RConjIntro conclusion must conjoin the premises"
        return None
    if rule == "RCut":
        p1, p2 = c.premises
        if p1.conclusion.lhs != concl.lhs:
            return "RCut first premise must start at the conclusion's left side"
        if p1.conclusion.rhs != p2.conclusion.lhs:
            return "RCut premises must meet in the middle"
        if p2.conclusion.rhs != concl.rhs:
            return "RCut second premise must end at the conclusion's right side"
        return None
    if rule == "RMonoOuter":
        if not (isinstance(concl.lhs, Diamond) and isinstance(concl.rhs, Diamond)):
            return "RMonoOuter conclusion must be a diamond sequent"
        a, b = concl.lhs.label, concl.rhs.label
        (p,) = c.premises
        if p.conclusion.lhs != concl.lhs.body or p.conclusion.rhs != concl.rhs.body:
            return "RMonoOuter premise must relate the diamond bodies"
        if _side_shape(c.side.conclusion, a, b) is None:
            return "side condition must conclude the label ordering"
        return None
    if rule == "RMonoAbsorb":
        if not (isinstance(concl.lhs, Diamond) and isinstance(concl.lhs.body, Diamond)):
            return "RMonoAbsorb left side must start with two diamonds"
        if not isinstance(concl.rhs, Diamond):
            return "RMonoAbsorb right side must be a diamond"
        a = concl.lhs.label
        b = concl.lhs.body.label
        if concl.rhs.label != b:
            return "RMonoAbsorb must keep the inner label"
        (p,) = c.premises
        if p.conclusion.lhs != concl.lhs.body.body or p.conclusion.rhs != concl.rhs.body:
            return "RMonoAbsorb premise must relate the inner bodies"
        if _side_shape(c.side.conclusion, a, b) is None:
            return "side condition must conclude the label ordering"
        return None
    if rule == "RNeg5":
        if not (
            isinstance(concl.lhs, Conj)
            and isinstance(concl.lhs.left, Diamond)
            and isinstance(concl.lhs.right, Diamond)
        ):
            return "RNeg5 left side must conjoin two diamonds"
        a = concl.lhs.left.label
        b = concl.lhs.right.label
        expected = Diamond(a, Conj(concl.lhs.left.body, concl.lhs.right))
        if concl.rhs != expected:
            return "RNeg5 conclusion must absorb the smaller diamond"
        if _side_shape(c.side.conclusion, a, b) != "strict":
            return "side condition must be strict"
        return None
    raise AssertionError(rule)


def check_derivation(cert: Certificate) -> CheckResult:
    """Validate a certificate; reports the first failing node in preorder."""
    stack = [(cert, "root")]
    while stack:
        node, path = stack.pop()
        reason = _check_node(node)
        if reason is not None:
            return CheckResult(False, path, reason)
        children = []
        for i, p in enumerate(node.premises):
            children.append((p, "%s.premises[%d]" % (path, i)))
        if node.side is not None:
            children.append((node.side, path + ".side"))
        stack.extend(reversed(children))
    return VALID


# --- order deciders ----------------------------------------------------------


def decide_le(a: BracketWorm, b: BracketWorm) -> bool:
    """True iff b lies at or below a in the derivable ordering."""
    return cmp(o_star(b), o_star(a)) <= 0


def decide_lt(a: BracketWorm, b: BracketWorm) -> bool:
    """True iff b lies strictly below a."""
    return cmp(o_star(b), o_star(a)) < 0


def decide_closed_geq(phi: BracketFormula, psi: BracketFormula) -> bool:
    """Compare two variable-free formulas by their worm normalizations."""
    from .proving import conj_to_worm

    wa, _, _ = conj_to_worm(phi)
    wb, _, _ = conj_to_worm(psi)
    return decide_le(wa, wb)


# --- JSON wire format ----------------------------------------------------------


def certificate_to_json_obj(cert: Certificate) -> dict:
    out: dict = {}
    stack = [(cert, out)]
    while stack:
        node, slot = stack.pop()
        slot["rule"] = node.rule
        slot["conclusion"] = {
            "lhs": print_formula(node.conclusion.lhs),
            "rhs": print_formula(node.conclusion.rhs),
        }
        slot["premises"] = [dict() for _ in node.premises]
        for p, ps in zip(node.premises, slot["premises"]):
            stack.append((p, ps))
        if node.side is None:
            slot["side"] = None
        else:
            slot["side"] = {}
            stack.append((node.side, slot["side"]))
    return out


def certificate_to_json(cert: Certificate) -> str:
    return json.dumps(certificate_to_json_obj(cert), sort_keys=True)


def certificate_from_json_obj(obj) -> Certificate:
    # build bottom-up with an explicit stack so deep trees stay safe
    todo = [obj]
    order = []
    while todo:
        node = todo.pop()
        order.append(node)
        for p in node.get("premises") or ():
            todo.append(p)
        if node.get("side"):
            todo.append(node["side"])
    built: dict = {}
    for node in reversed(order):
        concl = Sequent(
            parse_formula(node["conclusion"]["lhs"]),
            parse_formula(node["conclusion"]["rhs"]),
        )
        premises = tuple(built[id(p)] for p in node.get("premises") or ())
        side = built[id(node["side"])] if node.get("side") else None
        built[id(node)] = Certificate(concl, node["rule"], premises, side)
    return built[id(obj)]


def certificate_from_json(text: str) -> Certificate:
    return certificate_from_json_obj(json.loads(text))
