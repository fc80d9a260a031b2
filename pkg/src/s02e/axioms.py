"""Axiom schemas and syntactic matching against them.

Schema variables are ``x1``, ``x2``, ``x3`` (read ``x``, ``y``, ``z``).
Schemas indexed by ``i = 0, 1`` or by a predicate and argument position
are grouped under one family name with several variants.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .syntax import (
    App,
    Atom,
    Formula,
    Not,
    Sequent,
    Term,
    Var,
    Zero,
    parse_sequent,
    substitute_many,
)


@dataclass(frozen=True)
class Schema:
    family: str
    variant: str
    group: str
    sequent: Sequent


def _seq(ants: str, sucs: str) -> Sequent:
    return parse_sequent(f"(seq (ants {ants}) (sucs {sucs}))")


_PLUS_H = "(+ (half x1) x2)"

# (group, family, [(variant, antecedents, succedents), ...])
_TABLE = [
    ("E", "e-zero", [("", "", "(E 0)")]),
    ("E", "e-succ", [("s0", "(E x1)", "(E (s0 x1))"), ("s1", "(E x1)", "(E (s1 x1))")]),
    ("E", "e-atom", [
        ("le.1", "(<= x1 x2)", "(E x1)"),
        ("le.2", "(<= x1 x2)", "(E x2)"),
        ("eq.1", "(= x1 x2)", "(E x1)"),
        ("eq.2", "(= x1 x2)", "(E x2)"),
        ("E.1", "(E x1)", "(E x1)"),
    ]),
    ("E", "e-negatom", [
        ("le.1", "(not (<= x1 x2))", "(E x1)"),
        ("le.2", "(not (<= x1 x2))", "(E x2)"),
        ("eq.1", "(not (= x1 x2))", "(E x1)"),
        ("eq.2", "(not (= x1 x2))", "(E x2)"),
        ("E.1", "(not (E x1))", "(E x1)"),
    ]),
    ("equality", "eq-refl", [("", "(E x1)", "(= x1 x1)")]),
    ("equality", "eq-trans", [("", "(= x1 x2) (= x2 x3)", "(= x1 x3)")]),
    ("equality", "eq-succ", [
        ("s0", "(= x1 x2)", "(= (s0 x1) (s0 x2))"),
        ("s1", "(= x1 x2)", "(= (s1 x1) (s1 x2))"),
    ]),
    ("separation", "sep-s0", [("", "(not (= x1 0))", "(not (= x1 (s0 x1)))")]),
    ("separation", "sep-s1", [("", "(E x1)", "(not (= x1 (s1 x1)))")]),
    ("separation", "sep-s0s1", [("", "(E x1)", "(not (= (s0 x1) (s1 x1)))")]),
    ("inequality", "le-zero", [("", "(E x1)", "(<= 0 x1)")]),
    ("inequality", "le-succ", [
        ("s0", "(<= x1 x2)", "(<= (s0 x1) (s0 x2))"),
        ("s1", "(<= x1 x2)", "(<= (s1 x1) (s1 x2))"),
    ]),
    ("inequality", "le-s0s1", [("", "(<= x1 x2)", "(<= (s0 x1) (s1 x2))")]),
    ("cond", "cond-zero", [("", "(E x2) (E x3)", "(= (cond 0 x2 x3) x2)")]),
    ("cond", "cond-s0", [("", "(E (cond x1 x2 x3))", "(= (cond (s0 x1) x2 x3) (cond x1 x2 x3))")]),
    ("cond", "cond-s1", [("", "(E x1) (E x2) (E x3)", "(= (cond (s1 x1) x2 x3) x3)")]),
    ("S", "succ-zero", [("", "", "(= (S 0) (s1 0))")]),
    ("S", "succ-s0", [("", "(E (s1 x1))", "(= (S (s0 x1)) (s1 x1))")]),
    ("S", "succ-s1", [("", "(E (S x1))", "(= (S (s1 x1)) (s0 (S x1)))")]),
    ("len", "len-zero", [("", "", "(= (len 0) 0)")]),
    ("len", "len-s0", [("", "(E (S (len x1)))", "(= (len (s0 x1)) (cond x1 0 (S (len x1))))")]),
    ("len", "len-s1", [("", "(E (S (len x1)))", "(= (len (s1 x1)) (S (len x1)))")]),
    ("half", "half-zero", [("", "", "(= (half 0) 0)")]),
    ("half", "half-s0", [("", "(E x1)", "(= (half (s0 x1)) x1)")]),
    ("half", "half-s1", [("", "(E x1)", "(= (half (s1 x1)) x1)")]),
    ("bp", "bp-zero", [("", "(E x1)", "(= (bp x1 0) x1)")]),
    ("bp", "bp-s0", [("", "(E (s0 (bp x1 x2)))", "(= (bp x1 (s0 x2)) (cond x2 x1 (s0 (bp x1 x2))))")]),
    ("bp", "bp-s1", [("", "(E (s0 (bp x1 x2)))", "(= (bp x1 (s1 x2)) (s0 (bp x1 x2)))")]),
    ("#", "smash-zero", [("", "(E x1)", "(= (# x1 0) (s1 0))")]),
    ("#", "smash-s0", [("", "(E (bp (# x1 x2) x1))", "(= (# x1 (s0 x2)) (cond x2 (s1 0) (bp (# x1 x2) x1)))")]),
    ("#", "smash-s1", [("", "(E (bp (# x1 x2) x1))", "(= (# x1 (s1 x2)) (bp (# x1 x2) x1))")]),
    ("parity", "parity-zero", [("", "", "(= (parity 0) 0)")]),
    ("parity", "parity-s0", [("", "(E x1)", "(= (parity (s0 x1)) 0)")]),
    ("parity", "parity-s1", [("", "(E x1)", "(= (parity (s1 x1)) (s1 0))")]),
    ("+", "plus-zero", [("", "(E x1)", "(= (+ x1 0) x1)")]),
    ("+", "plus-s0", [("", f"(E {_PLUS_H})",
                       f"(= (+ x1 (s0 x2)) (cond (parity x1) (s0 {_PLUS_H}) (s1 {_PLUS_H})))")]),
    ("+", "plus-s1", [("", f"(E {_PLUS_H})",
                       f"(= (+ x1 (s1 x2)) (cond (parity x1) (s1 {_PLUS_H}) (s0 (S {_PLUS_H}))))")]),
    ("*", "times-zero", [("", "(E x1)", "(= (* x1 0) 0)")]),
    ("*", "times-s0", [("", "(E (* x1 x2))", "(= (* x1 (s0 x2)) (s0 (* x1 x2)))")]),
    ("*", "times-s1", [("", "(E (+ (s0 (* x1 x2)) x1))", "(= (* x1 (s1 x2)) (+ (s0 (* x1 x2)) x1))")]),
]

SCHEMAS: tuple[Schema, ...] = tuple(
    Schema(family, variant, group, _seq(a, s))
    for group, family, variants in _TABLE
    for variant, a, s in variants
)
FAMILIES: tuple[str, ...] = tuple(dict.fromkeys(s.family for s in SCHEMAS))


def schemas_of(family: str) -> tuple[Schema, ...]:
    found = tuple(s for s in SCHEMAS if s.family == family)
    if not found:
        raise KeyError(f"unknown axiom {family!r}")
    return found


# ------------------------------------------------------------- matching


def _match_term(pat: Term, t: Term, sub: dict[int, Term]) -> bool:
    if isinstance(pat, Var):
        bound = sub.get(pat.index)
        if bound is None:
            sub[pat.index] = t
            return True
        return bound == t
    if isinstance(pat, Zero):
        return isinstance(t, Zero)
    return (
        isinstance(t, App)
        and t.op == pat.op
        and all(_match_term(p, a, sub) for p, a in zip(pat.args, t.args))
    )


def _match_formula(pat: Formula, f: Formula, sub: dict[int, Term]) -> bool:
    if isinstance(pat, Not):
        return isinstance(f, Not) and _match_formula(pat.atom, f.atom, sub)
    return (
        isinstance(pat, Atom)
        and isinstance(f, Atom)
        and pat.pred == f.pred
        and all(_match_term(p, a, sub) for p, a in zip(pat.args, f.args))
    )


def match_schema(schema: Schema, s: Sequent) -> Optional[dict[int, Term]]:
    if len(schema.sequent.ants) != len(s.ants) or len(schema.sequent.sucs) != len(s.sucs):
        return None
    sub: dict[int, Term] = {}
    for pat, f in zip(schema.sequent.formulas(), s.formulas()):
        if not _match_formula(pat, f, sub):
            return None
    return sub


def match_axiom(s: Sequent, family: str | None = None) -> Optional[tuple[Schema, dict[int, Term]]]:
    """First schema (in table order) of which ``s`` is a substitution
    instance, with the substitution."""
    for schema in schemas_of(family) if family else SCHEMAS:
        sub = match_schema(schema, s)
        if sub is not None:
            return schema, sub
    return None


def instantiate(schema: Schema, sub: dict[int, Term]) -> Sequent:
    return substitute_many(schema.sequent, sub)
