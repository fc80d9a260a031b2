"""Bounded truth.

``holds_qf(u, f, env)`` decides quantifier-free formulas through truth
trees whose literal leaves are evaluated with :func:`value_dn`; a literal
whose terms do not all have values at most ``u`` is false, whichever its
sign. ``holds(u, f, env)`` extends this to 1-forms and ``E t``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .coding import TAG_TTREE, decode_formula, encode_formula, formula_size_bound, pack
from .semantics import lookup
from .syntax import (
    All,
    And,
    Atom,
    FormClass,
    Formula,
    Not,
    Or,
    classify_form,
    free_vars,
    is_quantifier_free,
    print_formula,
)
from .valuation import value_dn


class NotAOneForm(ValueError):
    """``holds`` was asked about a formula outside 1-forms and ``E t``."""


@dataclass(frozen=True)
class TruthTree:
    code: int
    eps: int
    children: tuple["TruthTree", ...] = ()


def relation(pred: str, values: Sequence[int]) -> bool:
    if pred == "<=":
        return values[0] <= values[1]
    if pred == "=":
        return values[0] == values[1]
    return True  # E: every value exists


def _literal(u: int, f: Atom | Not, env: Sequence[int]) -> int:
    atom = f.atom if isinstance(f, Not) else f
    values = []
    for t in atom.args:
        c = value_dn(t, env, u)
        if c is None:
            return 0
        values.append(c)
    truth = relation(atom.pred, values)
    return int(truth != isinstance(f, Not))


def build_truth_tree(f: Formula, env: Sequence[int], u: int) -> TruthTree:
    if isinstance(f, (Atom, Not)):
        return TruthTree(encode_formula(f), _literal(u, f, env))
    if isinstance(f, (And, Or)):
        left = build_truth_tree(f.left, env, u)
        right = build_truth_tree(f.right, env, u)
        if isinstance(f, And):
            eps = left.eps & right.eps
        else:
            eps = left.eps | right.eps
        return TruthTree(encode_formula(f), eps, (left, right))
    raise ValueError(f"truth trees are defined for quantifier-free formulas, got {print_formula(f)}")


def encode_truth_tree(w: TruthTree) -> int:
    return pack((TAG_TTREE, w.code, w.eps, *(encode_truth_tree(c) for c in w.children)))


def verify_truth_tree(w: TruthTree, f: Formula, env: Sequence[int], u: int) -> bool:
    """Check the defining clauses of a truth tree for ``f``."""
    if w.code != encode_formula(f) or w.eps not in (0, 1):
        return False
    g = decode_formula(w.code)
    if isinstance(g, (Atom, Not)):
        return not w.children and w.eps == _literal(u, g, env)
    if isinstance(g, (And, Or)) and len(w.children) == 2:
        l, r = w.children
        if not (verify_truth_tree(l, g.left, env, u) and verify_truth_tree(r, g.right, env, u)):
            return False
        return w.eps == ((l.eps & r.eps) if isinstance(g, And) else (l.eps | r.eps))
    return False


def _check_env(f: Formula, env: Sequence[int]) -> None:
    for i in free_vars(f):
        lookup(env, i)


def holds_qf(u: int, f: Formula, env: Sequence[int]) -> bool:
    """Bounded truth of a quantifier-free formula."""
    if not is_quantifier_free(f):
        raise ValueError(f"not quantifier-free: {print_formula(f)}")
    _check_env(f, env)
    w = build_truth_tree(f, env, u)
    assert encode_truth_tree(w) <= formula_size_bound(w.code, u), "truth tree exceeds its size bound"
    return w.eps == 1


def bind(env: Sequence[int], var: int, value: int) -> list[int]:
    """``env`` with ``x<var>`` set to ``value`` (padding with zeros)."""
    out = list(env)
    if var > len(out):
        out.extend([0] * (var - len(out)))
    out[var - 1] = value
    return out


@dataclass
class Trace:
    """Why :func:`holds` answered as it did."""

    form: str
    result: bool = False
    notes: dict = field(default_factory=dict)


def _sb_all(u: int, f: All, env: Sequence[int], trace: Trace | None) -> bool:
    c = value_dn(f.bound.args[0], env, u)
    if c is None:
        if trace:
            trace.notes["bound"] = "diverges"
        return False
    for x in range(c.bit_length() + 1):
        if not holds_qf(u, f.body, bind(env, f.var, x)):
            if trace:
                trace.notes["refuted_at"] = x
            return False
    return True


def explain(u: int, f: Formula, env: Sequence[int]) -> Trace:
    """Decide ``holds(u, f, env)`` and record witnesses."""
    cls = classify_form(f)
    trace = Trace(cls.value)
    if cls is FormClass.NOT_ONE_FORM:
        raise NotAOneForm(f"not a 1-form or E-atom: {print_formula(f)}")
    _check_env(f, env)
    if cls in (FormClass.QUANTIFIER_FREE, FormClass.E_ATOM):
        trace.result = holds_qf(u, f, env)
    elif cls is FormClass.SHARPLY_BOUNDED_ALL:
        trace.result = _sb_all(u, f, env, trace)
    else:
        inner: All = f.body
        c = value_dn(f.bound, env, u)
        if c is None:
            trace.notes["bound"] = "diverges"
            return trace
        failures = {}
        for x1 in range(c + 1):
            sub = Trace(FormClass.SHARPLY_BOUNDED_ALL.value)
            if _sb_all(u, inner, bind(env, f.var, x1), sub):
                trace.result = True
                trace.notes["witness"] = x1
                return trace
            if len(failures) < 8:
                failures[x1] = sub.notes
        trace.notes["failed"] = failures
    return trace


def holds(u: int, f: Formula, env: Sequence[int]) -> bool:
    """Bounded truth of a 1-form or ``E t``."""
    return explain(u, f, env).result


def decide_atomic(u: int, a: Atom, env: Sequence[int]) -> Optional[bool]:
    """Truth value of an atom when all its terms have values at most ``u``."""
    values = []
    for t in a.args:
        c = value_dn(t, env, u)
        if c is None:
            return None
        values.append(c)
    return relation(a.pred, values)
