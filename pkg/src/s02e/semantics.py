"""Standard interpretation of the function symbols over the naturals.

Two independent evaluators are provided:

* :func:`eval_closed` uses closed-form arithmetic;
* :func:`eval_rewrite` substitutes numerals for variables and normalizes
  with the defining equations read left to right, innermost first.

Neither calls the other; tests compare them.
"""

from __future__ import annotations

import sys
from typing import Sequence

from .syntax import ZERO, App, Term, Var, Zero, free_vars, numeral, numeral_value, subterms, substitute_many


class UnboundVariable(LookupError):
    pass


class RewriteBudgetExceeded(RuntimeError):
    """The rewriter used more steps than its budget; a rule is missing or loops."""


def lookup(env: Sequence[int], index: int) -> int:
    if index > len(env):
        raise UnboundVariable(f"x{index} is not bound by an environment of length {len(env)}")
    return env[index - 1]


def apply_op(op: str, args: Sequence[int]) -> int:
    """Value of a function symbol applied to natural-number arguments."""
    if op == "S":
        return args[0] + 1
    if op == "half":
        return args[0] >> 1
    if op == "len":
        return args[0].bit_length()
    if op == "s0":
        return args[0] << 1
    if op == "s1":
        return (args[0] << 1) | 1
    if op == "parity":
        return args[0] & 1
    if op == "+":
        return args[0] + args[1]
    if op == "*":
        return args[0] * args[1]
    if op == "#":
        return 1 << (args[0].bit_length() * args[1].bit_length())
    if op == "bp":
        return args[0] << args[1].bit_length()
    if op == "cond":
        return args[1] if args[0] == 0 else args[2]
    raise ValueError(f"unknown function symbol {op!r}")


def eval_closed(t: Term, env: Sequence[int] = ()) -> int:
    if isinstance(t, Zero):
        return 0
    if isinstance(t, Var):
        return lookup(env, t.index)
    return apply_op(t.op, [eval_closed(a, env) for a in t.args])


# ------------------------------------------------------------ rewriting


class _Normal:
    """Marks an already-normalized numeral inside a rule right-hand side."""

    __slots__ = ("term",)

    def __init__(self, term: Term):
        self.term = term


_ONE = App("s1", (ZERO,))


def _a(op, *args):
    # Rule right-hand sides may contain _Normal leaves; App only checks arity.
    return App(op, args)


def _rule(op: str, args: list[Term]):
    """Right-hand side for ``op(args)`` with numeral arguments, or None if
    the application is already a numeral."""
    n = [_Normal(a) for a in args]
    x = args[0]
    if op in ("s0", "s1"):
        if op == "s0" and isinstance(x, Zero):
            return _Normal(ZERO)
        return None
    if op == "cond":
        if isinstance(x, Zero):
            return n[1]
        if x.op == "s0":
            return _a("cond", _Normal(x.args[0]), n[1], n[2])
        return n[2]
    if op in ("S", "half", "len", "parity"):
        if isinstance(x, Zero):
            return _Normal(_ONE) if op == "S" else _Normal(ZERO)
        inner = _Normal(x.args[0])
        even = x.op == "s0"
        if op == "S":
            return _a("s1", inner) if even else _a("s0", _a("S", inner))
        if op == "half":
            return inner
        if op == "len":
            length = _a("S", _a("len", inner))
            return _a("cond", inner, _Normal(ZERO), length) if even else length
        return _Normal(ZERO) if even else _Normal(_ONE)
    # binary symbols recurse on the right argument
    y = args[1]
    if isinstance(y, Zero):
        if op in ("+", "bp"):
            return n[0]
        return _Normal(_ONE) if op == "#" else _Normal(ZERO)
    yi = _Normal(y.args[0])
    even = y.op == "s0"
    if op == "bp":
        rec = _a("bp", n[0], yi)
        return _a("cond", yi, n[0], _a("s0", rec)) if even else _a("s0", rec)
    if op == "#":
        rec = _a("bp", _a("#", n[0], yi), n[0])
        return _a("cond", yi, _Normal(_ONE), rec) if even else rec
    if op == "*":
        rec = _a("s0", _a("*", n[0], yi))
        return rec if even else _a("+", rec, n[0])
    if op == "+":
        h = _a("+", _a("half", n[0]), yi)
        par = _a("parity", n[0])
        if even:
            return _a("cond", par, _a("s0", h), _a("s1", h))
        return _a("cond", par, _a("s1", h), _a("s0", _a("S", h)))
    raise ValueError(f"unknown function symbol {op!r}")


class Rewriter:
    """Innermost normalizer for closed terms.

    Identical subterm objects created by a single rule (such as the
    repeated ``half(x) + y`` in the addition rules) are normalized once.
    """

    def __init__(self, budget: int):
        self.budget = budget
        self.steps = 0
        self._memo: dict[int, tuple[object, Term]] = {}

    def normalize(self, t) -> Term:
        if isinstance(t, _Normal):
            return t.term
        if isinstance(t, Zero):
            return t
        if isinstance(t, Var):
            raise UnboundVariable(f"open term: x{t.index}")
        hit = self._memo.get(id(t))
        if hit is not None and hit[0] is t:
            return hit[1]
        args = [self.normalize(a) for a in t.args]
        rhs = _rule(t.op, args)
        if rhs is None:
            nf = App(t.op, tuple(args))
        else:
            self.steps += 1
            if self.steps > self.budget:
                raise RewriteBudgetExceeded(f"more than {self.budget} rewrite steps")
            nf = self.normalize(rhs)
        self._memo[id(t)] = (t, nf)
        return nf


def bit_bound(t: Term, env: Sequence[int] = ()) -> int:
    """Syntactic upper bound on the bit length of every subterm value."""
    if isinstance(t, Zero):
        return 0
    if isinstance(t, Var):
        return lookup(env, t.index).bit_length()
    b = [bit_bound(a, env) for a in t.args]
    op = t.op
    if op in ("S", "s0", "s1"):
        return b[0] + 1
    if op in ("half", "len"):
        return b[0]
    if op == "parity":
        return 1
    if op == "+":
        return max(b) + 1
    if op in ("*", "bp"):
        return b[0] + b[1]
    if op == "#":
        return b[0] * b[1] + 1
    return max(b[1], b[2])


def max_bit_bound(t: Term, env: Sequence[int] = ()) -> int:
    """:func:`bit_bound` maximized over all subterms."""
    return max(bit_bound(s, env) for s in subterms(t))


def rewrite_budget(t: Term, env: Sequence[int] = ()) -> int:
    """Step budget ``10 * size * (B + 1)**2`` with ``B`` from :func:`bit_bound`.

    The square accounts for ``*`` and ``#``, whose recursions run an
    inner linear recursion once per digit of the outer argument.
    """
    size = sum(1 for _ in subterms(t))
    b = max_bit_bound(t, env)
    return 10 * size * (b + 1) ** 2


def eval_rewrite(t: Term, env: Sequence[int] = (), budget: int | None = None) -> int:
    """Value of ``t`` under ``env`` by rewriting to a numeral."""
    for i in free_vars(t):
        lookup(env, i)
    closed = substitute_many(t, {i: numeral(env[i - 1]) for i in free_vars(t)})
    rw = Rewriter(rewrite_budget(t, env) if budget is None else budget)
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 20000))
    try:
        nf = rw.normalize(closed)
    finally:
        sys.setrecursionlimit(old)
    return numeral_value(nf)
