import pytest
from hypothesis import given, strategies as st

from s02e import bundled
from s02e.proofs import Proof, encode_proof, parse_proof
from s02e.soundness import (
    CEILING_ENV_VAR,
    audit_budget_laws,
    budget_concat,
    budget_sub,
    budget_sub_floor,
    check_node_soundness,
    check_proof_soundness,
    instance_ceiling,
    recheck_counterexample,
)
from s02e.syntax import parse_sequent

nat = st.integers(min_value=0, max_value=2**40)
pos = st.integers(min_value=1, max_value=2**40)


def by_name(name: str) -> Proof:
    return parse_proof(bundled.entry(name).text)


def test_concat_with_empty_code():
    assert budget_concat(13, 0) == 13


@given(nat, pos)
def test_sub_inverts_concat(u, r):
    assert budget_sub(budget_concat(u, r), r) == u


@given(nat, nat, pos)
def test_sub_is_the_adjoint_of_concat(u, v, r):
    room = budget_sub(u, r)
    assert (room is not None and v <= room) == (budget_concat(v, r) <= u)


@given(nat, nat, pos)
def test_concat_is_monotone(u, v, r):
    lo, hi = sorted((u, v))
    assert budget_concat(lo, r) <= budget_concat(hi, r)
    assert budget_concat(lo, r) > lo or lo == 0 and r == 0


@given(st.integers(min_value=0, max_value=2**12), st.integers(min_value=1, max_value=2**12))
def test_successors_stay_below_concat(up, r):
    assert 2 * up + 1 <= budget_concat(up, r)


def test_floor_subtraction_breaks_the_cut_chain():
    p = by_name("rule_cut.s02e")
    r, r1, r2 = encode_proof(p), encode_proof(p.premises[0]), encode_proof(p.premises[1])
    assert audit_budget_laws(p) == []
    for up in range(5):
        # least u with u' <= u (-) r under each definition of (-)
        u_floor = up << r.bit_length()
        assert budget_sub_floor(u_floor, r) == up
        u_adj = budget_concat(up, r)
        assert budget_concat(up, r1) <= budget_sub(u_adj, r2)
        if up == 0:
            assert budget_concat(up, r1) > budget_sub_floor(u_floor, r2)


def test_ceiling_from_environment(monkeypatch):
    monkeypatch.setenv(CEILING_ENV_VAR, "123")
    assert instance_ceiling() == 123
    monkeypatch.delenv(CEILING_ENV_VAR)
    assert instance_ceiling() == 2_000_000


def test_absolute_grid_at_small_bound_is_vacuous():
    report = check_proof_soundness(by_name("ineq_axiom.s02e"), 8)
    assert report.ok
    assert [n.outcome for n in report.nodes] == ["vacuous"]


def test_relative_grid_covers_every_point():
    report = check_proof_soundness(by_name("ineq_axiom.s02e"), 8, relative=True)
    (node,) = report.nodes
    assert node.outcome == "holds" and node.uPrimeMax == 8
    assert node.checked == node.gridPoints == 9 * 9


def test_ceiling_falls_back_to_sampling():
    report = check_proof_soundness(by_name("example_12_nodes.s02e"), 8, relative=True, ceiling=50)
    assert report.ok
    assert {n.strategy for n in report.nodes} == {"sample (ceiling)"}
    assert all(n.checked == 50 for n in report.nodes)


def test_sampling_is_reproducible():
    p = by_name("rule_cut.s02e")
    a = check_proof_soundness(p, 8, mode="sample", samples=40, seed=5, relative=True)
    b = check_proof_soundness(p, 8, mode="sample", samples=40, seed=5, relative=True)
    assert a.to_json() == b.to_json()
    assert a.to_json()["seed"] == 5


@pytest.mark.parametrize("name", ["rule_all-r.s02e", "rule_ex-l.s02e", "rule_cut.s02e", "example_12_nodes.s02e"])
def test_corpus_proofs_hold_on_the_relative_grid(name):
    report = check_proof_soundness(by_name(name), 6, relative=True)
    assert report.ok
    assert all(n.outcome == "holds" for n in report.nodes)


def test_forged_zero_equals_one_is_refuted_and_rechecks():
    p = by_name("forged_zero_eq_one.s02e")
    report = check_proof_soundness(p, 8, relative=True, require_checked=False)
    assert not report.ok
    bad = [n for n in report.nodes if n.outcome == "fails"]
    assert bad and all(recheck_counterexample(p, n, 8, relative=True) for n in bad)


def test_forged_empty_sequent_fails_everywhere():
    p = by_name("forged_empty_sequent.s02e")
    report = check_proof_soundness(p, 4, relative=True, require_checked=False)
    root = report.nodes[0]
    assert root.nodePath == "root" and root.outcome == "fails"
    assert root.counterexample == {"env": [], "uPrime": 0, "variables": []}


def test_node_check_contract():
    p = Proof("axiom", parse_sequent("(seq (ants (E x1)) (sucs (<= 0 x1)))"), axiom="le-zero")
    r = encode_proof(p)
    u = budget_concat(8, r)
    assert check_node_soundness(p, u, [8], 8)
    with pytest.raises(ValueError):
        check_node_soundness(p, u, [], 0)
    with pytest.raises(ValueError):
        check_node_soundness(p, u, [u + 1], 0)
    with pytest.raises(ValueError):
        check_node_soundness(p, u, [0], 9)


@pytest.mark.parametrize("e", [e for e in bundled.entries() if e.expect in ("accept", "reject", "forged")],
                         ids=lambda e: e.name)
def test_budget_laws_hold_on_corpus(e):
    assert audit_budget_laws(parse_proof(e.text)) == []


def test_report_json_shape():
    report = check_proof_soundness(by_name("ineq_axiom.s02e"), 3, relative=True)
    j = report.to_json()
    assert j["verdict"] == "all nodes hold" and j["relative"] is True
    assert set(j["nodes"][0]) >= {"nodePath", "rule", "k", "codeBits", "outcome", "strategy"}
    assert "counterexample" not in j["nodes"][0]
