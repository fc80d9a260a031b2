"""Valuation trees and bounded evaluation.

A valuation tree of ``t`` under ``env`` bounded by ``u`` pairs every
subterm occurrence of ``t`` with its value; every value is at most ``u``.
``value_dn(t, env, u)`` is the value at the root when such a tree exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .coding import TAG_VTREE, DecodeError, app_code, decode_term, encode_term, pack, tree_size_bound
from .semantics import UnboundVariable, apply_op, lookup
from .syntax import ARITY, Term, Var, Zero, print_term, subterms


@dataclass(frozen=True)
class ValuationTree:
    code: int
    value: int
    children: tuple["ValuationTree", ...] = ()


def build_valuation_tree(t: Term, env: Sequence[int], u: int) -> Optional[ValuationTree]:
    """The valuation tree of ``t`` bounded by ``u``, or None when some
    subterm (variables included) has a value above ``u``."""
    if isinstance(t, Zero):
        return ValuationTree(encode_term(t), 0)
    if isinstance(t, Var):
        value = lookup(env, t.index)
        return ValuationTree(encode_term(t), value) if value <= u else None
    children = []
    for a in t.args:
        child = build_valuation_tree(a, env, u)
        if child is None:
            return None
        children.append(child)
    value = apply_op(t.op, [c.value for c in children])
    if value > u:
        return None
    return ValuationTree(app_code(t.op, [c.code for c in children]), value, tuple(children))


def verify_valuation_tree(w: ValuationTree, t: Term, env: Sequence[int], u: int) -> bool:
    """Check the four defining clauses of a valuation tree for ``t``."""
    allowed = {encode_term(s) for s in subterms(t)}
    if not isinstance(w, ValuationTree) or w.code != encode_term(t):
        return False

    def ok(node: ValuationTree) -> bool:
        if not isinstance(node, ValuationTree) or node.code not in allowed:
            return False
        if not isinstance(node.value, int) or not 0 <= node.value <= u:
            return False
        try:
            s = decode_term(node.code)
        except DecodeError:
            return False
        if isinstance(s, Zero):
            return not node.children and node.value == 0
        if isinstance(s, Var):
            try:
                return not node.children and node.value == lookup(env, s.index)
            except UnboundVariable:
                return False
        if len(node.children) != ARITY[s.op]:
            return False
        for child, arg in zip(node.children, s.args):
            if child.code != encode_term(arg) or not ok(child):
                return False
        return node.value == apply_op(s.op, [c.value for c in node.children])

    return ok(w)


def encode_tree(w: ValuationTree) -> int:
    return pack((TAG_VTREE, w.code, w.value, *(encode_tree(c) for c in w.children)))


def value_dn(t: Term, env: Sequence[int], u: int) -> Optional[int]:
    """Value of ``t`` if it has a valuation tree bounded by ``u``."""
    w = build_valuation_tree(t, env, u)
    if w is None:
        return None
    assert encode_tree(w) <= tree_size_bound(w.code, u), "valuation tree exceeds its size bound"
    return w.value


def tree_to_sexpr(w: ValuationTree) -> str:
    head = f"(node {print_term(decode_term(w.code))} {w.value}"
    if not w.children:
        return head + ")"
    return head + " " + " ".join(tree_to_sexpr(c) for c in w.children) + ")"
