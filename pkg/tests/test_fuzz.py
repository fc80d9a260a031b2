import random

from hypothesis import given, strategies as st

from s02e.fuzz import ProofBuilder, abstract, fuzz, fuzz_proof
from s02e.proofs import ProofError, check_proof
from s02e.syntax import free_vars, parse_formula, parse_term


def test_fuzz_proofs_are_reproducible():
    assert fuzz_proof(11, 4) == fuzz_proof(11, 4)
    assert fuzz_proof(11, 4) != fuzz_proof(11, 5)


def test_abstract_replaces_every_occurrence():
    f = parse_formula("(and (<= (S x1) x2) (= (S x1) 0))")
    g = abstract(f, parse_term("(S x1)"), 9)
    assert 9 in free_vars(g) and 1 not in free_vars(g)


def test_unmutated_builds_are_accepted():
    accepted = 0
    for i in range(60):
        b = ProofBuilder(random.Random(i))
        p = b.build(6)
        try:
            check_proof(p)
            accepted += 1
        except ProofError as e:
            # only the deliberate non-1-form leak may fail
            assert e.category == "not-1-form", (i, e)
    assert accepted >= 40


@given(st.integers(min_value=0, max_value=1000))
def test_accepted_fuzz_proofs_never_end_in_the_empty_sequent(i):
    p, _ = fuzz_proof(2, i)
    try:
        checked = check_proof(p)
    except ProofError:
        return
    assert checked.end_sequent.formulas()


def test_small_campaign_report():
    report = fuzz(40, seed=1, samples_per_node=4)
    j = report.to_json()
    assert report.ok and j["verdict"] == "ok"
    assert j["accepted"] + sum(j["rejected"].values()) == 40
    assert fuzz(40, seed=1, samples_per_node=4).to_json() == j
