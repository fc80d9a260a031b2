"""Executable forms of the valuation and truth lemmas.

Each ``check_*`` function returns None when the statement holds on the
given instance and a short description of the counterexample otherwise.
"""

from __future__ import annotations

import random
from typing import Optional, Sequence

from s02e.gen import random_env, random_qf, random_small_term
from s02e.semantics import apply_op
from s02e.syntax import (
    App,
    And,
    Atom,
    Formula,
    Not,
    Or,
    Term,
    Var,
    ZERO,
    app,
    free_vars,
    print_formula,
    print_term,
    substitute,
)
from s02e.truth import decide_atomic, holds, holds_qf
from s02e.valuation import ValuationTree, build_valuation_tree, verify_valuation_tree, value_dn


def _walk(w: ValuationTree):
    yield w
    for c in w.children:
        yield from _walk(c)


def _retag(w: ValuationTree, target: ValuationTree, value: int) -> ValuationTree:
    if w is target:
        return ValuationTree(w.code, value, w.children)
    return ValuationTree(w.code, w.value, tuple(_retag(c, target, value) for c in w.children))


# ------------------------------------------------------------- valuation


def check_tree_widens(t: Term, env, u: int, u2: int) -> Optional[str]:
    """A tree bounded by ``u`` is still a tree bounded by ``u2 >= u``."""
    w = build_valuation_tree(t, env, u)
    if w is not None and not verify_valuation_tree(w, t, env, u2):
        return f"tree of {print_term(t)} at {u} not valid at {u2}"
    return None


def check_value_stable(t: Term, env, u: int, u2: int) -> Optional[str]:
    c = value_dn(t, env, u)
    if c is not None and value_dn(t, env, u2) != c:
        return f"{print_term(t)}: value {c} at {u}, {value_dn(t, env, u2)} at {u2}"
    return None


def check_tree_unique(t: Term, env, u: int, rng: random.Random) -> Optional[str]:
    """No tree with a different value at any node verifies."""
    w = build_valuation_tree(t, env, u)
    if w is None:
        return None
    nodes = list(_walk(w))
    target = rng.choice(nodes)
    for other in {0, u, rng.randint(0, u), target.value + 1} - {target.value}:
        forged = _retag(w, target, other)
        if verify_valuation_tree(forged, t, env, u):
            return f"{print_term(t)}: forged tree with value {other} verifies"
    return None


def check_value_composes(t: Term, env, u: int) -> Optional[str]:
    c = value_dn(t, env, u)
    if c is None or not isinstance(t, App):
        return None
    ds = [value_dn(a, env, u) for a in t.args]
    if None in ds or apply_op(t.op, ds) != c:
        return f"{print_term(t)}: value {c}, argument values {ds}"
    return None


def check_zero_and_variables(env) -> Optional[str]:
    if value_dn(ZERO, env, 0) != 0:
        return "0 has no value at bound 0"
    for j, b in enumerate(env, start=1):
        if value_dn(Var(j), env, b) != b:
            return f"x{j} has no value {b} at bound {b}"
    return None


def _substitution_rhs(value_of_t_prime, eval_with):
    """``exists c' <= u. t' evaluates to c' and ... with a := c'``."""
    return None if value_of_t_prime is None else eval_with(value_of_t_prime)


def check_term_substitution(t: Term, a: int, t_prime: Term, env, u: int) -> Optional[str]:
    """``t`` must mention ``a = x<len(env)+1>``."""
    lhs = value_dn(substitute(t, a, t_prime), env, u)
    rhs = _substitution_rhs(value_dn(t_prime, env, u), lambda c: value_dn(t, list(env) + [c], u))
    if lhs != rhs:
        return f"{print_term(t)}[x{a} := {print_term(t_prime)}] at {u}: {lhs} vs {rhs}"
    return None


# ----------------------------------------------------------------- truth


def literal_rhs(f, env, u: int) -> bool:
    """Right-hand sides of the literal clauses: every term converges and
    the relation (or its negation) holds."""
    negated = isinstance(f, Not)
    atom = f.atom if negated else f
    values = [value_dn(t, env, u) for t in atom.args]
    if None in values:
        return False
    if atom.pred == "E":
        return not negated
    rel = values[0] <= values[1] if atom.pred == "<=" else values[0] == values[1]
    return rel != negated


def check_qf_clauses(f: Formula, env, u: int) -> Optional[str]:
    """Literal clauses at the leaves, conjunction and disjunction clauses
    at inner nodes, checked at every subformula."""
    got = holds_qf(u, f, env)
    if isinstance(f, (Atom, Not)):
        want = literal_rhs(f, env, u)
    elif isinstance(f, And):
        want = holds_qf(u, f.left, env) and holds_qf(u, f.right, env)
    else:
        want = holds_qf(u, f.left, env) or holds_qf(u, f.right, env)
    if got != want:
        return f"{print_formula(f)} at {u}: {got}, clause says {want}"
    if isinstance(f, (And, Or)):
        return check_qf_clauses(f.left, env, u) or check_qf_clauses(f.right, env, u)
    return None


def mention_in_every_literal(f: Formula, a: int) -> Formula:
    """Make every literal of ``f`` mention ``x<a>`` by adding it to the
    first argument of literals that lack it."""
    if isinstance(f, (And, Or)):
        return type(f)(mention_in_every_literal(f.left, a), mention_in_every_literal(f.right, a))
    atom = f.atom if isinstance(f, Not) else f
    if a in free_vars(atom):
        return f
    args = (app("+", atom.args[0], Var(a)),) + atom.args[1:]
    new = Atom(atom.pred, args)
    return Not(new) if isinstance(f, Not) else new


def check_qf_substitution(f: Formula, a: int, t_prime: Term, env, u: int) -> Optional[str]:
    """``f`` must mention ``a = x<len(env)+1>`` in every literal."""
    lhs = holds_qf(u, substitute(f, a, t_prime), env)
    rhs = _substitution_rhs(value_dn(t_prime, env, u), lambda c: holds_qf(u, f, list(env) + [c]))
    if lhs != bool(rhs):
        return f"{print_formula(f)}[x{a} := {print_term(t_prime)}] at {u}: {lhs} vs {rhs}"
    return None


def check_qf_monotone(f: Formula, env, u: int, u2: int) -> Optional[str]:
    if holds_qf(u, f, env) and not holds_qf(u2, f, env):
        return f"{print_formula(f)} true at {u}, false at {u2}"
    return None


def check_truth_monotone(f: Formula, env, bounds: Sequence[int]) -> Optional[str]:
    seen = False
    for u in bounds:
        now = holds(u, f, env)
        if seen and not now:
            return f"{print_formula(f)} true below {u}, false at {u}"
        seen = seen or now
    return None


def check_excluded_middle(a: Atom, env, u: int) -> Optional[str]:
    """When every term converges exactly one of ``a`` and its negation is
    true; otherwise neither is."""
    pos = holds_qf(u, a, env)
    neg = holds_qf(u, Not(a), env)
    if decide_atomic(u, a, env) is None:
        return None if not (pos or neg) else f"{print_formula(a)} diverges but a literal holds"
    if a.pred == "E":
        return None if pos and not neg else f"E-atom {print_formula(a)}: {pos}, {neg}"
    return None if pos != neg else f"{print_formula(a)} at {u}: positive {pos}, negative {neg}"


# ------------------------------------------------------------- instances


def valuation_instance(rng: random.Random):
    env = random_env(rng, rng.randint(0, 3), 20)
    t = random_small_term(rng, rng.randint(0, 4), env, max_numeral=31, max_bits=8)
    u = rng.randint(0, 64)
    return t, env, u


def qf_instance(rng: random.Random):
    env = random_env(rng, rng.randint(0, 3), 20)
    f = random_qf(rng, 3, env, term_depth=2, max_numeral=31)
    return f, env, rng.randint(0, 64)
