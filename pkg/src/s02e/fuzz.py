"""Random proof attempts: a consistency and soundness probe.

Each attempt starts from an axiom instance or an identity and applies a
few randomly chosen inferences. Inferences are built to be correct when
their side conditions allow it, so most attempts check. A fraction of the
attempts are then deliberately damaged (a mutated sequent, a swapped rule
tag, an empty end-sequent) to keep the rejection paths busy.
"""

from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

from .axioms import SCHEMAS, Schema, instantiate, _match_formula
from .gen import random_one_form, random_qf, random_small_term
from .proofs import PREMISES, Path, Proof, ProofError, RULES, check_proof, eigenvariable
from .soundness import audit_budget_laws, check_proof_soundness
from .syntax import (
    All,
    And,
    App,
    Atom,
    E,
    Ex,
    Formula,
    Not,
    Or,
    Sequent,
    Term,
    Var,
    all_vars,
    app,
    free_vars,
    is_quantifier_free,
    contains_e,
    le,
    substitute,
    substitute_many,
)

NVARS = 3
EIGEN_BASE = 10


def abstract_term(t: Term, target: Term, x: int) -> Term:
    if t == target:
        return Var(x)
    if isinstance(t, App):
        return App(t.op, tuple(abstract_term(a, target, x) for a in t.args))
    return t


def abstract(f: Formula, target: Term, x: int) -> Formula:
    """Replace every occurrence of ``target`` in ``f`` by ``x`` (which must
    be fresh for ``f``)."""
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(abstract_term(a, target, x) for a in f.args))
    if isinstance(f, Not):
        return Not(abstract(f.atom, target, x))
    if isinstance(f, (And, Or)):
        return type(f)(abstract(f.left, target, x), abstract(f.right, target, x))
    body = f.body if f.var in free_vars(target) else abstract(f.body, target, x)
    return type(f)(f.var, abstract_term(f.bound, target, x), body)


def _subterms_of(f: Formula) -> list[Term]:
    from .syntax import formula_terms, subterms

    return [s for t in formula_terms(f) for s in subterms(t)]


def _qf_plain(f: Formula) -> bool:
    return is_quantifier_free(f) and not contains_e(f)


@dataclass
class ProofBuilder:
    """Builds one proof attempt; all randomness comes from ``rng``."""

    rng: random.Random
    u: int = 16
    eigen: int = EIGEN_BASE

    # ---- material

    def term(self, max_bits: int = 10) -> Term:
        depth = self.rng.choice((0, 0, 1, 1, 2))
        return random_small_term(self.rng, depth, [self.u] * NVARS, max_numeral=7, max_bits=max_bits, leaf_prob=0.4)

    def formula(self) -> Formula:
        r = self.rng.random()
        env = [self.u] * NVARS
        if r < 0.4:
            return random_qf(self.rng, 1, env, 1, 7, with_e=False)
        if r < 0.55:
            return E(self.term())
        return random_one_form(self.rng, env, 7)

    def fresh_eigen(self) -> int:
        self.eigen += 1
        return self.eigen

    def bound_var(self, *objs) -> int:
        used = set()
        for o in objs:
            used |= all_vars(o)
        return max(used | {NVARS + 2}) + 1

    # ---- leaves

    def axiom_leaf(self) -> Proof:
        schema = self.rng.choice(SCHEMAS)
        sub = {v: self.term() for v in sorted(free_vars(schema.sequent))}
        return Proof("axiom", instantiate(schema, sub), axiom=schema.family)

    def identity_leaf(self) -> Proof:
        a = self.rng.choice((le, lambda s, t: Atom("=", (s, t))))(self.term(), self.term())
        if self.rng.random() < 0.3:
            a = E(self.term())
        return Proof("identity", Sequent((a,), (a,)))

    def leaf(self) -> Proof:
        return self.identity_leaf() if self.rng.random() < 0.2 else self.axiom_leaf()

    # ---- one-premise rules

    def weak_l(self, p: Proof) -> Proof:
        s = p.sequent
        return Proof("weak-l", Sequent((self.formula(),) + s.ants, s.sucs), (p,))

    def weak_r(self, p: Proof) -> Proof:
        s = p.sequent
        return Proof("weak-r", Sequent(s.ants, s.sucs + (self.formula(),)), (p,))

    def contr_l(self, p: Proof) -> Optional[Proof]:
        s = p.sequent
        if not s.ants:
            return None
        w = Proof("weak-l", Sequent((s.ants[0],) + s.ants, s.sucs), (p,))
        return Proof("contr-l", s, (w,))

    def contr_r(self, p: Proof) -> Optional[Proof]:
        s = p.sequent
        if not s.sucs:
            return None
        w = Proof("weak-r", Sequent(s.ants, s.sucs + (s.sucs[-1],)), (p,))
        return Proof("contr-r", s, (w,))

    def exch(self, p: Proof) -> Optional[Proof]:
        s = p.sequent
        side = self.rng.choice(("l", "r"))
        seq = s.ants if side == "l" else s.sucs
        if len(seq) < 2:
            return None
        i = self.rng.randrange(len(seq) - 1)
        new = seq[:i] + (seq[i + 1], seq[i]) + seq[i + 2 :]
        out = Sequent(new, s.sucs) if side == "l" else Sequent(s.ants, new)
        return Proof(f"exch-{side}", out, (p,))

    def neg_l(self, p: Proof) -> Optional[Proof]:
        s = p.sequent
        if not s.sucs or not isinstance(s.sucs[-1], Atom):
            return None
        return Proof("neg-l", Sequent((Not(s.sucs[-1]),) + s.ants, s.sucs[:-1]), (p,))

    def neg_r(self, p: Proof) -> Optional[Proof]:
        s = p.sequent
        if not s.ants or not isinstance(s.ants[0], Atom) or not self._plain(s.ants[0]):
            return None
        a = s.ants[0]
        return Proof("neg-r", Sequent(tuple(E(t) for t in a.args) + s.ants[1:], s.sucs + (Not(a),)), (p,))

    def _plain(self, f: Formula) -> bool:
        # Occasionally let a non-1-form through to exercise the rejection path.
        return _qf_plain(f) or self.rng.random() < 0.1

    def and_l(self, p: Proof) -> Optional[Proof]:
        s = p.sequent
        if not s.ants or not self._plain(s.ants[0]):
            return None
        b = random_qf(self.rng, 1, [self.u] * NVARS, 1, 7, with_e=False)
        if self.rng.random() < 0.5:
            return Proof("and-l1", Sequent((And(s.ants[0], b),) + s.ants[1:], s.sucs), (p,))
        return Proof("and-l2", Sequent((And(b, s.ants[0]),) + s.ants[1:], s.sucs), (p,))

    def or_r(self, p: Proof) -> Optional[Proof]:
        s = p.sequent
        if not s.sucs or not self._plain(s.sucs[-1]):
            return None
        b = random_qf(self.rng, 1, [self.u] * NVARS, 1, 7, with_e=False)
        if self.rng.random() < 0.5:
            return Proof("or-r1", Sequent(s.ants, s.sucs[:-1] + (Or(s.sucs[-1], b),)), (p,))
        return Proof("or-r2", Sequent(s.ants, s.sucs[:-1] + (Or(b, s.sucs[-1]),)), (p,))

    def and_r(self, p: Proof) -> Optional[Proof]:
        s = p.sequent
        if not s.sucs or not self._plain(s.sucs[-1]):
            return None
        a = s.sucs[-1]
        return Proof("and-r", Sequent(s.ants, s.sucs[:-1] + (And(a, a),)), (p, self.rename_eigen(p)))

    def or_l(self, p: Proof) -> Optional[Proof]:
        s = p.sequent
        if not s.ants or not self._plain(s.ants[0]):
            return None
        a = s.ants[0]
        return Proof("or-l", Sequent((Or(a, a),) + s.ants[1:], s.sucs), (p, self.rename_eigen(p)))

    def rename_eigen(self, p: Proof) -> Proof:
        """Copy of ``p`` with fresh eigenvariables, so that both copies can
        sit side by side in free variable normal form."""
        mapping = {}
        for _, node in p.nodes():
            a = eigenvariable(node)
            if a is not None:
                mapping[a] = Var(self.fresh_eigen())
        if not mapping:
            return p

        def go(q: Proof) -> Proof:
            return replace(q, sequent=substitute_many(q.sequent, mapping), premises=tuple(go(r) for r in q.premises))

        return go(p)

    def formula_with(self, a: int) -> Formula:
        """A quantifier-free formula in which ``x<a>`` occurs."""
        f = random_qf(self.rng, 1, [self.u] * NVARS, 1, 7, with_e=False)
        vs = sorted(free_vars(f))
        if not vs:
            return le(Var(a), self.term())
        return substitute(f, self.rng.choice(vs), Var(a))

    # ---- quantifier rules

    @staticmethod
    def _own(candidates) -> list[int]:
        # x1..x<NVARS> are shared by every leaf, so later steps may bring
        # them back below the node; only generalize our own variables.
        return sorted(v for v in candidates if v > NVARS)

    def all_l(self, p: Proof) -> Optional[Proof]:
        s = p.sequent
        if not s.ants or not _qf_plain(s.ants[0]):
            return None
        f = s.ants[0]
        t = self.rng.choice(_subterms_of(f))
        x = self.bound_var(f, t)
        bound = app("len", self.term(8))
        q = All(x, bound, abstract(f, t, x))
        return Proof("all-l", Sequent((le(t, bound), q) + s.ants[1:], s.sucs), (p,))

    def ex_r(self, p: Proof) -> Optional[Proof]:
        s = p.sequent
        if not s.sucs or not isinstance(s.sucs[-1], All):
            body = random_qf(self.rng, 1, [self.u] * (NVARS + 1), 1, 7, with_e=False)
            extra = All(NVARS + 1, app("len", self.term(8)), body)
            p = Proof("weak-r", Sequent(s.ants, s.sucs + (extra,)), (p,))
            s = p.sequent
        f = s.sucs[-1]
        candidates = [t for t in _subterms_of(f) if f.var not in free_vars(t) and t != f.bound]
        if not candidates:
            return None
        t = self.rng.choice(candidates)
        x = self.bound_var(f, t)
        bound = self.term(5)
        q = Ex(x, bound, abstract(f, t, x))
        return Proof("ex-r", Sequent((le(t, bound),) + s.ants, s.sucs[:-1] + (q,)), (p,))

    def all_r(self, p: Proof) -> Optional[Proof]:
        s = p.sequent
        f = s.sucs[-1] if s.sucs and _qf_plain(s.sucs[-1]) else None
        rest = s.ants + (s.sucs[:-1] if f is not None else s.sucs)
        t_arg = self.term(8)
        context = set(free_vars(Sequent(rest, ()))) | free_vars(t_arg)
        choices = self._own(free_vars(f) - context) if f is not None else []
        if not choices:
            a = self.fresh_eigen()
            f = self.formula_with(a)
            p = Proof("weak-r", Sequent(s.ants, s.sucs + (f,)), (p,))
            s = p.sequent
        else:
            a = self.rng.choice(choices)
        bound = app("len", t_arg)
        x = self.bound_var(f, bound)
        premise = Proof("weak-l", Sequent((le(Var(a), bound),) + s.ants, s.sucs), (p,))
        q = All(x, bound, abstract(f, Var(a), x))
        return Proof("all-r", Sequent((E(bound),) + s.ants, s.sucs[:-1] + (q,)), (premise,))

    def ex_l(self, p: Proof) -> Optional[Proof]:
        s = p.sequent
        bound = self.term(5)
        f = s.ants[0] if s.ants and isinstance(s.ants[0], All) else None
        context = set(free_vars(Sequent(s.ants[1:] if f else s.ants, s.sucs))) | free_vars(bound)
        choices = self._own(free_vars(f) - context) if f else []
        if choices:
            a = self.rng.choice(choices)
        else:
            a = self.fresh_eigen()
            y = NVARS + 1  # terms from self.term() only use x1..x<NVARS>
            body = Or(self.formula_with(a), le(Var(y), self.term()))
            f = All(y, app("len", self.term(8)), body)
            p = Proof("weak-l", Sequent((f,) + s.ants, s.sucs), (p,))
            s = p.sequent
        x = self.bound_var(f, bound)
        premise = Proof("weak-l", Sequent((le(Var(a), bound),) + s.ants, s.sucs), (p,))
        q = Ex(x, bound, abstract(f, Var(a), x))
        return Proof("ex-l", Sequent((q,) + s.ants[1:], s.sucs), (premise,))

    # ---- cut against a fitting axiom instance

    def _axiom_fitting(self, f: Formula, first_antecedent: bool) -> Optional[Proof]:
        fits: list[tuple[Schema, dict]] = []
        for schema in SCHEMAS:
            side = schema.sequent.ants[:1] if first_antecedent else schema.sequent.sucs[-1:]
            sub: dict = {}
            if side and _match_formula(side[0], f, sub):
                fits.append((schema, sub))
        if not fits:
            return None
        schema, sub = self.rng.choice(fits)
        for v in sorted(free_vars(schema.sequent)):
            sub.setdefault(v, self.term())
        return Proof("axiom", instantiate(schema, sub), axiom=schema.family)

    def cut(self, p: Proof) -> Optional[Proof]:
        s = p.sequent
        if s.sucs and self.rng.random() < 0.5:
            right = self._axiom_fitting(s.sucs[-1], True)
            if right is not None:
                r = right.sequent
                return Proof("cut", Sequent(s.ants + r.ants[1:], s.sucs[:-1] + r.sucs), (p, right))
        if s.ants:
            left = self._axiom_fitting(s.ants[0], False)
            if left is not None:
                l = left.sequent
                return Proof("cut", Sequent(l.ants + s.ants[1:], l.sucs[:-1] + s.sucs), (left, p))
        return None

    STEPS: tuple[str, ...] = (
        "weak_l", "weak_r", "contr_l", "contr_r", "exch", "neg_l", "neg_r", "and_l", "or_r",
        "and_r", "or_l", "all_l", "ex_r", "all_r", "ex_l", "cut", "cut", "cut",
    )

    def build(self, steps: int) -> Proof:
        p = self.leaf()
        for _ in range(steps):
            for _attempt in range(6):
                step: Callable = getattr(self, self.rng.choice(self.STEPS))
                q = step(p)
                if q is not None and q.size() <= 40:
                    p = q
                    break
        return p

    # ---- damage

    def mutate(self, p: Proof) -> tuple[Proof, str]:
        nodes = list(p.nodes())
        path, node = self.rng.choice(nodes)
        kind = self.rng.choice(("sequent", "rule", "empty", "term"))
        s = node.sequent
        if kind == "empty" or (kind == "sequent" and not s.formulas()):
            new = replace(node, sequent=Sequent((), ()))
        elif kind == "sequent":
            if s.ants and (not s.sucs or self.rng.random() < 0.5):
                new = replace(node, sequent=Sequent(s.ants[1:], s.sucs))
            else:
                new = replace(node, sequent=Sequent(s.ants, s.sucs[:-1]))
        elif kind == "rule":
            same = [r for r in RULES if PREMISES[r] == PREMISES[node.rule] and r != node.rule]
            new = replace(node, rule=self.rng.choice(same), axiom=None)
        else:
            f = self.formula()
            new = replace(node, sequent=Sequent(s.ants, s.sucs + (f,)))
        return replace_at(p, path, new), kind


def replace_at(p: Proof, path: Path, new: Proof) -> Proof:
    if not path:
        return new
    i = path[0]
    prems = list(p.premises)
    prems[i] = replace_at(prems[i], path[1:], new)
    return replace(p, premises=tuple(prems))


def fuzz_proof(seed: int, index: int, u: int = 16, mutation_rate: float = 0.25) -> tuple[Proof, Optional[str]]:
    """The ``index``-th attempt of run ``seed``; reproducible on its own."""
    rng = random.Random(f"fuzz:{seed}:{index}")
    b = ProofBuilder(rng, u)
    p = b.build(rng.randint(1, 8))
    if rng.random() < mutation_rate:
        return b.mutate(p)
    return p, None


@dataclass
class FuzzReport:
    count: int
    seed: int
    u: int
    samples_per_node: int
    accepted: int = 0
    rejected: Counter = field(default_factory=Counter)
    mutations: Counter = field(default_factory=Counter)
    mutated_accepted: int = 0
    empty_sequent_accepted: int = 0
    rules_used: Counter = field(default_factory=Counter)
    sizes: list[int] = field(default_factory=list)
    accepted_sizes: list[int] = field(default_factory=list)
    soundness_failures: list[dict] = field(default_factory=list)
    budget_violations: list[dict] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not (self.empty_sequent_accepted or self.soundness_failures or self.budget_violations)

    def to_json(self) -> dict:
        return {
            "count": self.count,
            "seed": self.seed,
            "u": self.u,
            "samplesPerNode": self.samples_per_node,
            "accepted": self.accepted,
            "acceptanceRate": self.accepted / self.count if self.count else 0.0,
            "rejected": dict(sorted(self.rejected.items())),
            "mutations": dict(sorted(self.mutations.items())),
            "mutatedAccepted": self.mutated_accepted,
            "emptySequentAccepted": self.empty_sequent_accepted,
            "rulesUsed": dict(sorted(self.rules_used.items())),
            "soundnessFailures": self.soundness_failures,
            "budgetViolations": self.budget_violations,
            "verdict": "ok" if self.ok else "failure",
        }


def fuzz(count: int, seed: int, u: int = 16, samples_per_node: int = 16, mutation_rate: float = 0.25) -> FuzzReport:
    """Generate ``count`` attempts; check each, and sample the soundness
    grid (relative, at ``u``) on every accepted one."""
    report = FuzzReport(count, seed, u, samples_per_node)
    start = time.perf_counter()
    for i in range(count):
        p, mutation = fuzz_proof(seed, i, u, mutation_rate)
        if mutation:
            report.mutations[mutation] += 1
        report.sizes.append(p.size())
        for v in audit_budget_laws(p, u_primes=range(0, 17)):
            report.budget_violations.append({"proof": i, "law": v.law, "nodePath": v.path, "uPrime": v.u_prime})
        try:
            checked = check_proof(p)
        except ProofError as e:
            report.rejected[e.category] += 1
            continue
        report.accepted += 1
        report.accepted_sizes.append(p.size())
        report.mutated_accepted += mutation is not None
        report.rules_used.update(node.rule for _, node in p.nodes())
        if not checked.end_sequent.formulas():
            report.empty_sequent_accepted += 1
        sound = check_proof_soundness(p, u, mode="sample", samples=samples_per_node, seed=seed * 1_000_003 + i, relative=True)
        for n in sound.nodes:
            if n.outcome == "fails":
                report.soundness_failures.append({"proof": i, "nodePath": n.nodePath, "rule": n.rule,
                                                  "counterexample": n.counterexample})
    report.seconds = time.perf_counter() - start
    return report
