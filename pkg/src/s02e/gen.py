"""Seeded random generators for terms and formulas."""

from __future__ import annotations

import random
from typing import Sequence

from .semantics import max_bit_bound
from .syntax import (
    ARITY,
    All,
    And,
    Atom,
    Ex,
    Formula,
    Not,
    Or,
    Term,
    Var,
    App,
    E,
    app,
    numeral,
)

FUNCTIONS = tuple(ARITY)
RELATIONS = ("<=", "=")


def random_leaf(rng: random.Random, nvars: int, max_numeral: int) -> Term:
    if nvars and rng.random() < 0.5:
        return Var(rng.randint(1, nvars))
    return numeral(rng.randint(0, max_numeral))


def random_term(rng: random.Random, depth: int, nvars: int = 0, max_numeral: int = 1023, leaf_prob: float = 0.3) -> Term:
    """Term of depth at most ``depth`` over ``x1..x<nvars>`` whose leaves
    are numerals below ``max_numeral + 1`` or variables.

    Depth counts function applications, so numeral leaves add nothing.
    """
    if depth == 0 or rng.random() < leaf_prob:
        return random_leaf(rng, nvars, max_numeral)
    op = rng.choice(FUNCTIONS)
    return App(op, tuple(random_term(rng, depth - 1, nvars, max_numeral, leaf_prob) for _ in range(ARITY[op])))


def random_small_term(
    rng: random.Random,
    depth: int,
    env: Sequence[int] = (),
    max_numeral: int = 1023,
    max_bits: int = 64,
    leaf_prob: float = 0.3,
) -> Term:
    """Like :func:`random_term` but resampled until every subterm value
    under ``env`` (not just the root's) fits in ``max_bits`` bits."""
    while True:
        t = random_term(rng, depth, len(env), max_numeral, leaf_prob)
        if max_bit_bound(t, env) <= max_bits:
            return t


def random_atom(rng: random.Random, depth: int, env: Sequence[int], max_numeral: int = 15, with_e: bool = True) -> Atom:
    preds = RELATIONS + (("E",) if with_e else ())
    pred = rng.choice(preds)
    args = [random_small_term(rng, depth, env, max_numeral, max_bits=24) for _ in range(1 if pred == "E" else 2)]
    return Atom(pred, tuple(args))


def random_literal(rng: random.Random, depth: int, env: Sequence[int], max_numeral: int = 15, with_e: bool = True):
    a = random_atom(rng, depth, env, max_numeral, with_e)
    if a.pred != "E" and rng.random() < 0.4:
        return Not(a)
    return a


def random_qf(rng: random.Random, depth: int, env: Sequence[int], term_depth: int = 2,
              max_numeral: int = 15, with_e: bool = True) -> Formula:
    """Quantifier-free formula over ``x1..x<len(env)>`` (``E`` only as a
    positive literal)."""
    if depth == 0 or rng.random() < 0.35:
        return random_literal(rng, term_depth, env, max_numeral, with_e)
    cls = And if rng.random() < 0.5 else Or
    return cls(random_qf(rng, depth - 1, env, term_depth, max_numeral, with_e),
               random_qf(rng, depth - 1, env, term_depth, max_numeral, with_e))


def random_one_form(rng: random.Random, env: Sequence[int], max_numeral: int = 15) -> Formula:
    """A random 1-form or ``E t`` over ``x1..x<len(env)>``; quantified
    variables get the next free indices.

    Quantifier bounds are kept small so naive enumeration stays cheap.
    """
    n = len(env)
    x, y = n + 1, n + 2
    inner_env = list(env) + [0, 0]
    kind = rng.choice(("qf", "E", "all", "ex"))
    if kind == "E":
        return E(random_small_term(rng, 2, env, max_numeral, max_bits=12))
    if kind == "qf":
        return random_qf(rng, 2, env, 2, max_numeral, with_e=False)
    bound_arg = random_small_term(rng, 2, env, max_numeral, max_bits=10)
    if kind == "all":
        body = random_qf(rng, 2, inner_env[: n + 1], 2, max_numeral, with_e=False)
        return All(x, app("len", bound_arg), body)
    outer = random_small_term(rng, 1, env, max_numeral, max_bits=5)
    body = random_qf(rng, 2, inner_env, 2, max_numeral, with_e=False)
    return Ex(x, outer, All(y, app("len", bound_arg if rng.random() < 0.5 else Var(x)), body))


def random_env(rng: random.Random, n: int, max_value: int = 16) -> list[int]:
    return [rng.randint(0, max_value) for _ in range(n)]

