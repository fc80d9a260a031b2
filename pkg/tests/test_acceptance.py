"""Acceptance criteria 1-9, one test each.

Every test records a PASS/FAIL line that is printed in the terminal
summary (and by ``python3 tests/test_acceptance.py``).
"""

from __future__ import annotations

import random
import time

import pytest

from s02e import bundled
from s02e.axioms import SCHEMAS
from s02e.fuzz import fuzz, fuzz_proof
from s02e.gen import random_atom, random_env, random_one_form, random_qf, random_small_term
from s02e.proofs import RULES, Proof, ProofError, check_proof, encode_proof, parse_proof
from s02e.semantics import eval_closed, eval_rewrite
from s02e.sexpr import ParseError
from s02e.soundness import (
    audit_budget_laws,
    budget_concat,
    check_node_soundness,
    check_proof_soundness,
)
from s02e.syntax import Var, app, free_vars, is_one_form_or_e, numeral, parse_sequent

import lemmas

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = {}


def record(n: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"
    print(ACCEPTANCE_LINES[n])


# ---------------------------------------------------------------- 1, 2


def test_criterion_1_evaluators_agree_on_random_closed_terms():
    rng = random.Random(1)
    start = time.perf_counter()
    bad = []
    n = 10_000
    for _ in range(n):
        t = random_small_term(rng, 6, (), max_numeral=1023, max_bits=64)
        if eval_closed(t) != eval_rewrite(t):
            bad.append(t)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    record(1, ok, f"{n} terms, {len(bad)} disagreements, {elapsed:.1f}s")
    assert not bad
    assert elapsed < 60


def test_criterion_2_closed_forms_of_bp_and_smash():
    bad = []
    for n in range(64):
        for m in range(64):
            if eval_rewrite(app("bp", numeral(n), numeral(m))) != n * 2 ** m.bit_length():
                bad.append(("bp", n, m))
            if eval_rewrite(app("#", numeral(n), numeral(m))) != 2 ** (n.bit_length() * m.bit_length()):
                bad.append(("#", n, m))
    record(2, not bad, f"4096 pairs, {len(bad)} mismatches")
    assert not bad


# ------------------------------------------------------------------- 3


def test_criterion_3_valuation_lemmas():
    rng = random.Random(3)
    failures = []
    n = 5000
    for _ in range(n):
        t, env, u = lemmas.valuation_instance(rng)
        u2 = rng.randint(u, 64)
        a = len(env) + 1
        # an instance for the substitution clause: t mentions a
        ext = env + [0]
        body = random_small_term(rng, 3, ext, max_numeral=31, max_bits=8)
        if a not in free_vars(body):
            body = app("+", body, Var(a))
        t_prime = random_small_term(rng, 2, env, max_numeral=31, max_bits=8)
        for check in (
            lemmas.check_tree_widens(t, env, u, u2),
            lemmas.check_value_stable(t, env, u, max(u2, u + 1)),
            lemmas.check_tree_unique(t, env, u, rng),
            lemmas.check_value_composes(t, env, u),
            lemmas.check_zero_and_variables(env),
            lemmas.check_term_substitution(body, a, t_prime, env, u),
        ):
            if check:
                failures.append(check)
    record(3, not failures, f"{n} instances, {len(failures)} counterexamples")
    assert not failures, failures[:5]


# ------------------------------------------------------------------- 4


def test_criterion_4_truth_lemmas():
    rng = random.Random(4)
    failures = []
    for _ in range(5000):
        f, env, u = lemmas.qf_instance(rng)
        a = len(env) + 1
        g = lemmas.mention_in_every_literal(
            random_qf(rng, 2, env + [0], term_depth=2, max_numeral=31), a
        )
        t_prime = random_small_term(rng, 2, env, max_numeral=31, max_bits=8)
        for check in (
            lemmas.check_qf_clauses(f, env, u),
            lemmas.check_qf_substitution(g, a, t_prime, env, u),
            lemmas.check_qf_monotone(f, env, u, rng.randint(u, 128)),
        ):
            if check:
                failures.append(check)
    qf_failures = len(failures)

    bounds = range(33)
    for _ in range(2000):
        env = random_env(rng, rng.randint(0, 2), 12)
        f = random_one_form(rng, env)
        assert is_one_form_or_e(f)
        if c := lemmas.check_truth_monotone(f, env, bounds):
            failures.append(c)
    t_failures = len(failures) - qf_failures

    for _ in range(2000):
        env = random_env(rng, rng.randint(0, 2), 20)
        atom = random_atom(rng, 3, env, max_numeral=31)
        if c := lemmas.check_excluded_middle(atom, env, rng.randint(0, 64)):
            failures.append(c)
    em_failures = len(failures) - qf_failures - t_failures
    record(4, not failures, f"quantifier-free clauses {qf_failures}, monotonicity {t_failures}, excluded middle {em_failures} counterexamples")
    assert not failures, failures[:5]


# ------------------------------------------------------------------- 5


def _schema_proof(schema) -> Proof:
    return Proof("axiom", schema.sequent, axiom=schema.family)


def test_criterion_5_axiom_schemas_are_sound():
    start = time.perf_counter()
    failing = []
    kmax = 0
    for schema in SCHEMAS:
        p = _schema_proof(schema)
        checked = is_one_form_or_e_all(p)
        for relative in (False, True):
            report = check_proof_soundness(p, 8, relative=relative, require_checked=checked)
            (node,) = report.nodes
            kmax = max(kmax, node.k)
            if node.outcome == "fails" or (relative and node.strategy != "enumerate"):
                failing.append((schema.family, schema.variant, relative, node.counterexample))
    elapsed = time.perf_counter() - start
    ok = not failing and kmax <= 3 and elapsed < 300
    record(5, ok, f"{len(SCHEMAS)} schema variants, k <= {kmax}, {len(failing)} failures, {elapsed:.1f}s")
    assert not failing
    assert kmax <= 3 and elapsed < 300


def is_one_form_or_e_all(p: Proof) -> bool:
    return all(is_one_form_or_e(f) for f in p.sequent.formulas())


# ------------------------------------------------------------------- 6


def test_criterion_6_every_rule_has_a_sound_example():
    failing = []
    for rule in RULES:
        p = parse_proof(bundled.entry(f"rule_{rule}.s02e").text)
        assert p.rule == rule
        for relative in (False, True):
            report = check_proof_soundness(p, 8, relative=relative)
            if not report.ok or (relative and any(n.outcome != "holds" for n in report.nodes)):
                failing.append((rule, relative))
    record(6, not failing, f"{len(RULES)} rules, failing: {failing or 'none'}")
    assert not failing


# ------------------------------------------------------------------- 7


def test_criterion_7_budget_laws_on_corpus_and_fuzzed_proofs():
    proofs = []
    for e in bundled.entries():
        try:
            proofs.append(parse_proof(e.text))
        except ParseError:
            continue
    corpus_count = len(proofs)
    proofs += [fuzz_proof(7, i)[0] for i in range(500)]
    violations = [v for p in proofs for v in audit_budget_laws(p)]
    record(7, not violations, f"{corpus_count} corpus + 500 fuzzed proofs, {len(violations)} violations")
    assert not violations, violations[:5]


# ------------------------------------------------------------------- 8


def test_criterion_8_fuzzing_finds_no_inconsistency():
    report = fuzz(500, seed=7)
    ok = report.empty_sequent_accepted == 0 and not report.soundness_failures
    record(8, ok, f"500 attempts, {report.accepted} accepted, {report.empty_sequent_accepted} empty sequents, "
                  f"{len(report.soundness_failures)} soundness failures")
    assert report.accepted > 0
    assert ok


# ------------------------------------------------------------------- 9


def test_criterion_9_negative_controls():
    wrong = []
    categories = set()
    for e in bundled.entries():
        if e.expect != "reject":
            continue
        try:
            check_proof(parse_proof(e.text))
            wrong.append((e.name, "accepted"))
        except ProofError as err:
            categories.add(err.category)
            if err.category != e.category:
                wrong.append((e.name, err.category, e.category))
    forged = Proof("axiom", parse_sequent("(seq (ants) (sucs (= 0 (s1 0))))"))
    # relative grid: u = 8 (+) r admits u' = 0..8, and the succedent is
    # decided at u' (+) r, far above 1
    r = encode_proof(forged)
    forged_fails = not any(check_node_soundness(forged, budget_concat(8, r), [], up) for up in range(9))
    expected = {"axiom-mismatch", "eigenvariable", "not-1-form"}
    ok = not wrong and expected <= categories and forged_fails
    record(9, ok, f"{len(wrong)} misclassified near-misses, categories {sorted(categories)}, "
                  f"forged node fails: {forged_fails}")
    assert not wrong, wrong
    assert expected <= categories
    assert forged_fails


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
