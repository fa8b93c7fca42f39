"""Fundamental sequences and step-down iteration.

Bracket worms step via a{n}: drop a leading top entry, otherwise replace the
head by its own step and repeat the prefix up to the first strictly smaller
entry n+1 times.  Ordinals below Gamma_0 step via the usual Veblen-based
case split.  Iterated stepping is budgeted: descent lengths grow far beyond
anything enumerable, so running out of budget is an ordinary outcome.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

from .ordinals import (
    ONE,
    ZERO,
    Ordinal,
    OrdinalKind,
    add,
    classify,
    cmp,
    mul_nat,
    pred,
    print_ordinal,
    veblen,
    veblen_iter,
)
from .syntax import TOP_WORM, BracketWorm, print_worm
from .worms import o_star


def fs_bracket(a: BracketWorm, n: int) -> BracketWorm:
    """One fundamental-sequence step a{n}."""
    e = a.entries
    if not e:
        return a
    if e[0] == TOP_WORM:
        return BracketWorm(e[1:])
    o1 = o_star(e[0])
    split = len(e)
    for i in range(1, len(e)):
        if cmp(o_star(e[i]), o1) < 0:
            split = i
            break
    bpref = (fs_bracket(e[0], n),) + e[1:split]
    return BracketWorm(bpref * (n + 1) + e[split:])


@dataclass(frozen=True)
class StepTrace:
    start: BracketWorm
    terminated: bool
    steps_used: int
    budget: int
    window: int
    head: tuple  # first worms of the trace, including the start
    tail: tuple  # last worms of the trace; empty if head covers everything

    @property
    def complete(self) -> bool:
        return len(self.head) == self.steps_used + 1

    @property
    def steps(self) -> tuple:
        """The full trace, only available when it fits in the window."""
        if not self.complete:
            raise ValueError("trace was truncated to a head/tail window")
        return self.head

    def to_json_obj(self) -> dict:
        return {
            "start": print_worm(self.start),
            "terminated": self.terminated,
            "steps_used": self.steps_used,
            "budget": self.budget,
            "head": [print_worm(w) for w in self.head],
            "tail": [print_worm(w) for w in self.tail],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)


# plain worms larger than this switch step_iter to the compressed engine,
# and worms larger than it are left out of trace windows
_DENSE_LIMIT = 4096


def step_iter(a: BracketWorm, budget: int, window: int = 64) -> StepTrace:
    """Iterate a[[n+1]] = a[[n]]{n+1} until top or the budget runs out.

    The first and last `window` worms are recorded, provided they are small
    enough to materialize; step counts and termination are always exact.
    Worms beyond a few thousand entries are handled by the run-length
    compressed engine, so budgets in the millions stay feasible even while
    the underlying worms grow astronomically long.
    """
    if budget < 0:
        raise ValueError("budget must be >= 0")
    head = [a]
    tail: deque = deque(maxlen=window)
    cur = a
    steps = 0
    terminated = not cur.entries
    runner = None
    while not terminated and steps < budget:
        steps += 1
        if runner is None:
            cur = fs_bracket(cur, steps)
            if len(cur.entries) > _DENSE_LIMIT:
                from ._compact import CompactRunner

                runner = CompactRunner(cur)
                runner.steps = steps
                record = None
                terminated = False
            else:
                record = cur
                terminated = not cur.entries
        else:
            runner.step()
            terminated = runner.finished
            record = None
            if runner.length <= _DENSE_LIMIT:
                from ._compact import to_bracket

                record = to_bracket(runner.as_cw(), limit=_DENSE_LIMIT)
        if record is not None:
            if len(head) == steps and len(head) < window + 1:
                head.append(record)
            else:
                tail.append((steps, record))
        else:
            tail.clear()
    # keep only a contiguous run of final worms in the tail
    tail_worms = []
    expect = steps
    for s, w in reversed(tail):
        if s != expect:
            break
        tail_worms.append(w)
        expect -= 1
    if tail_worms and expect < len(head) - 1:
        # the windows overlap; the head already covers everything
        tail_worms = []
    return StepTrace(
        start=a,
        terminated=terminated,
        steps_used=steps,
        budget=budget,
        window=window,
        head=tuple(head),
        tail=tuple(tail_worms[::-1]),
    )


def xhat(x: int, alpha: Ordinal) -> int:
    """x+1 at successors, 1 otherwise."""
    return x + 1 if classify(alpha) == OrdinalKind.SUCCESSOR else 1


def fs_veblen(xi: Ordinal, x: int) -> Ordinal:
    """One fundamental-sequence step xi[x] on Veblen normal forms."""
    if xi.is_zero():
        return ZERO
    if xi.fin:
        # a trailing finite part steps straight down by one: the additively
        # decomposable case peels the tail, and phi_0(0) = 1 steps to 0
        return Ordinal(xi.terms, xi.fin - 1)
    lead = xi.terms[0]
    rest = Ordinal(xi.terms[1:])
    if rest:
        return add(Ordinal((lead,)), fs_veblen(rest, x))
    a, b = lead.level, lead.arg
    if a.is_zero():
        # lead = phi_0(b) = omega**b with b >= 1
        if b.fin:
            return mul_nat(veblen(ZERO, pred(b)), x + 2)
        return veblen(ZERO, fs_veblen(b, x))
    if b.is_zero():
        return veblen_iter(fs_veblen(a, x), xhat(x, a), ZERO)
    if b.fin:
        return veblen_iter(fs_veblen(a, x), xhat(x, a), add(veblen(a, pred(b)), ONE))
    return veblen(a, fs_veblen(b, x))


@dataclass(frozen=True)
class DescentTrace:
    start: Ordinal
    terminated: bool
    steps_used: int
    budget: int
    window: int
    head: tuple
    tail: tuple

    @property
    def complete(self) -> bool:
        return len(self.head) == self.steps_used + 1

    @property
    def steps(self) -> tuple:
        if not self.complete:
            raise ValueError("trace was truncated to a head/tail window")
        return self.head

    def to_json_obj(self) -> dict:
        return {
            "start": print_ordinal(self.start),
            "terminated": self.terminated,
            "steps_used": self.steps_used,
            "budget": self.budget,
            "head": [print_ordinal(o) for o in self.head],
            "tail": [print_ordinal(o) for o in self.tail],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)


def descend(xi: Ordinal, budget: int, window: int = 64) -> DescentTrace:
    """Iterate xi<n+1> = xi<n>[n+1] until zero or the budget runs out."""
    if budget < 0:
        raise ValueError("budget must be >= 0")
    head = [xi]
    tail: deque = deque(maxlen=window)
    cur = xi
    steps = 0
    terminated = cur.is_zero()
    while not terminated and steps < budget:
        steps += 1
        cur = fs_veblen(cur, steps)
        if len(head) < window + 1:
            head.append(cur)
        else:
            tail.append(cur)
        terminated = cur.is_zero()
    return DescentTrace(
        start=xi,
        terminated=terminated,
        steps_used=steps,
        budget=budget,
        window=window,
        head=tuple(head),
        tail=tuple(tail),
    )


_GAMMA_CACHE = [ZERO]


def gamma(n: int) -> Ordinal:
    """gamma(0) = 0 and gamma(n+1) = phi_{gamma(n)}(0)."""
    while len(_GAMMA_CACHE) <= n:
        _GAMMA_CACHE.append(veblen(_GAMMA_CACHE[-1], ZERO))
    return _GAMMA_CACHE[n]


@dataclass(frozen=True)
class Found:
    steps: int


@dataclass(frozen=True)
class BudgetExhausted:
    steps: int


def F_witness(m: int, budget: int):
    """Least step count bringing gamma(m) down to zero, within budget."""
    trace = descend(gamma(m), budget, window=1)
    if trace.terminated:
        return Found(trace.steps_used)
    return BudgetExhausted(trace.steps_used)


def a_seq(n: int) -> BracketWorm:
    """a(0) = top, a(1) = (), a(n+2) = three brackets around a(n)."""
    if n == 0:
        return TOP_WORM
    if n == 1:
        return BracketWorm((TOP_WORM,))
    inner = a_seq(n - 2)
    w = BracketWorm((inner,))
    w = BracketWorm((w,))
    return BracketWorm((w,))


def G_witness(m: int, budget: int):
    """Least k with the primed worm reaching top after k+1 steps."""
    from ._compact import CompactRunner

    start = BracketWorm((TOP_WORM,) + a_seq(m).entries)
    runner = CompactRunner(start)
    if runner.run(budget):
        return Found(runner.steps - 1)
    return BudgetExhausted(runner.steps)
