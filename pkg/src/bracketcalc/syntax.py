"""Concrete syntax for bracket worms and strictly positive bracket formulas.

Surface syntax is plain ASCII: `(` `)` for brackets, `T` for the top worm,
`&` for conjunction, `p<digits>` for variables, whitespace ignored.  A
bracket group with empty body denotes the top worm, and a trailing top body
is suppressed when printing, so parse(print(x)) == x on canonical output.

Conjunction under a bracket needs explicit grouping, written `[` formula `]`;
it only ever appears in machine-produced derivation text.
"""

from __future__ import annotations


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__("%s at offset %d" % (message, offset))
        self.offset = offset


class BracketWorm:
    """A finite sequence of bracket worms; the empty sequence is top."""

    __slots__ = ("entries", "_hash")

    def __init__(self, entries: tuple = ()):
        self.entries = entries
        self._hash = hash(tuple(e._hash for e in entries))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, BracketWorm):
            return NotImplemented
        return self._hash == other._hash and self.entries == other.entries

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.entries)

    def __repr__(self):
        return "BracketWorm(%s)" % print_worm(self)


TOP_WORM = BracketWorm()


class BracketFormula:
    __slots__ = ()


class Top(BracketFormula):
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return isinstance(other, Top)

    def __hash__(self):
        return hash(Top)

    def __repr__(self):
        return "Top"


TOP = Top()


class Var(BracketFormula):
    __slots__ = ("index",)

    def __init__(self, index: int):
        if index < 1:
            raise ValueError("variable index must be positive")
        self.index = index

    def __eq__(self, other):
        return isinstance(other, Var) and self.index == other.index

    def __hash__(self):
        return hash(("var", self.index))

    def __repr__(self):
        return "Var(%d)" % self.index


class Conj(BracketFormula):
    __slots__ = ("left", "right", "_hash")

    def __init__(self, left: BracketFormula, right: BracketFormula):
        self.left = left
        self.right = right
        self._hash = hash(("conj", hash(left), hash(right)))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Conj):
            return False
        return self._hash == other._hash and self.left == other.left and self.right == other.right

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "Conj(%r, %r)" % (self.left, self.right)


class Diamond(BracketFormula):
    __slots__ = ("label", "body", "_hash")

    def __init__(self, label: BracketWorm, body: BracketFormula):
        self.label = label
        self.body = body
        self._hash = hash(("dia", label._hash, hash(body)))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Diamond):
            return False
        return self._hash == other._hash and self.label == other.label and self.body == other.body

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "Diamond(%r, %r)" % (self.label, self.body)


# --- parsing ---------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def fail(self, message: str):
        raise ParseError(message, self.pos)

    def parse_group(self) -> BracketWorm:
        # one "( body )" group; empty body is top
        assert self.peek() == "("
        self.pos += 1
        if self.peek() == ")":
            self.pos += 1
            return TOP_WORM
        inner = self.parse_worm_body()
        if self.peek() != ")":
            self.fail("expected ')'")
        self.pos += 1
        return inner

    def parse_worm_body(self) -> BracketWorm:
        c = self.peek()
        if c == "T":
            self.pos += 1
            return TOP_WORM
        if c != "(":
            self.fail("expected worm")
        entries = []
        while self.peek() == "(":
            entries.append(self.parse_group())
        return BracketWorm(tuple(entries))

    def parse_atom(self) -> BracketFormula:
        c = self.peek()
        if c == "T":
            self.pos += 1
            return TOP
        if c == "p":
            self.pos += 1
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if self.pos == start:
                raise ParseError("expected variable index", start)
            index = int(self.text[start:self.pos])
            if index < 1:
                raise ParseError("variable index must be positive", start)
            return Var(index)
        if c == "[":
            self.pos += 1
            inner = self.parse_formula_body()
            if self.peek() != "]":
                self.fail("expected ']'")
            self.pos += 1
            return inner
        if c == "(":
            label = self.parse_group()
            nxt = self.peek()
            if nxt in ("T", "p", "(", "["):
                body = self.parse_atom()
            else:
                body = TOP
            return Diamond(label, body)
        self.fail("expected formula")

    def parse_formula_body(self) -> BracketFormula:
        val = self.parse_atom()
        while self.peek() == "&":
            self.pos += 1
            val = Conj(val, self.parse_atom())
        return val


def parse_worm(text: str) -> BracketWorm:
    p = _Parser(text)
    w = p.parse_worm_body()
    p.skip_ws()
    if p.pos != len(text):
        p.fail("trailing input")
    return w


def parse_formula(text: str) -> BracketFormula:
    p = _Parser(text)
    f = p.parse_formula_body()
    p.skip_ws()
    if p.pos != len(text):
        p.fail("trailing input")
    return f


# --- printing --------------------------------------------------------------


def _print_entries(w: BracketWorm) -> str:
    return "".join(
        "(%s)" % (_print_entries(e) if e.entries else "") for e in w.entries
    )


def print_worm(w: BracketWorm) -> str:
    if not w.entries:
        return "T"
    return _print_entries(w)


def print_formula(f: BracketFormula) -> str:
    if isinstance(f, Top):
        return "T"
    if isinstance(f, Var):
        return "p%d" % f.index
    if isinstance(f, Conj):
        right = print_formula(f.right)
        if isinstance(f.right, Conj):
            right = "[%s]" % right
        return "%s&%s" % (print_formula(f.left), right)
    if isinstance(f, Diamond):
        label = "(%s)" % (_print_entries(f.label) if f.label.entries else "")
        if isinstance(f.body, Top):
            return label
        if isinstance(f.body, Conj):
            return "%s[%s]" % (label, print_formula(f.body))
        return label + print_formula(f.body)
    raise TypeError(f)


# --- structural measures ---------------------------------------------------


def nesting_worm(w: BracketWorm) -> int:
    """Maximum bracket nesting depth."""
    return max((nesting_worm(e) + 1 for e in w.entries), default=0)


def nesting_formula(f: BracketFormula) -> int:
    if isinstance(f, (Top, Var)):
        return 0
    if isinstance(f, Conj):
        return max(nesting_formula(f.left), nesting_formula(f.right))
    if isinstance(f, Diamond):
        return max(nesting_worm(f.label) + 1, nesting_formula(f.body))
    raise TypeError(f)
