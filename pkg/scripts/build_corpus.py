"""Regenerate the bundled proof corpus in src/s02e/corpus/.

Every file starts with comment lines; ``; expect:`` gives the outcome the
tests check:

    ; expect: accept
    ; expect: reject <category>
    ; expect: parse-error <category>
    ; expect: forged            (bypasses the checker; soundness must fail)

Run from the repository root: ``python3 scripts/build_corpus.py``.
"""

from __future__ import annotations

import pathlib
import sys

from s02e.axioms import FAMILIES, schemas_of
from s02e.proofs import Proof, ProofError, check_proof, print_proof
from s02e.syntax import Atom, Sequent, parse_sequent, parse_term

OUT = pathlib.Path(__file__).resolve().parent.parent / "src" / "s02e" / "corpus"


def seq(ants: str = "", sucs: str = "") -> Sequent:
    return parse_sequent(f"(seq (ants {ants}) (sucs {sucs}))")


def node(rule: str, ants: str, sucs: str, *prems: Proof, axiom: str | None = None, inst=()) -> Proof:
    return Proof(rule, seq(ants, sucs), tuple(prems), axiom, tuple(inst))


def ax(family: str, ants: str, sucs: str) -> Proof:
    return node("axiom", ants, sucs, axiom=family)


# Reused building blocks.
LE0 = ax("le-zero", "(E x1)", "(<= 0 x1)")
EQ_TRANS = ax("eq-trans", "(= x1 x2) (= x2 x3)", "(= x1 x3)")
EQ_REFL = ax("eq-refl", "(E x1)", "(= x1 x1)")

# x3 <= |x1| -> 0 <= x3, then generalize x3.
CUT_EXAMPLE = node(
    "cut", "(<= x3 (len x1))", "(<= 0 x3)",
    ax("e-atom", "(<= x3 (len x1))", "(E x3)"),
    ax("le-zero", "(E x3)", "(<= 0 x3)"),
)
ALL_R_EXAMPLE = node("all-r", "(E (len x1))", "(all x2 (len x1) (<= 0 x2))", CUT_EXAMPLE)


def twelve_node_example() -> Proof:
    n1 = LE0
    n2 = ax("le-zero", "(E x2)", "(<= 0 x2)")
    n3 = node("weak-l", "(E x2) (E x1)", "(<= 0 x1)", n1)
    n4 = node("exch-l", "(E x1) (E x2)", "(<= 0 x1)", n3)
    n5 = node("weak-l", "(E x1) (E x2)", "(<= 0 x2)", n2)
    goal = "(and (<= 0 x1) (<= 0 x2))"
    n6 = node("and-r", "(E x1) (E x2)", goal, n4, n5)
    n7 = ax("e-atom", "(= x1 x2)", "(E x1)")
    n8 = node("cut", "(= x1 x2) (E x2)", goal, n7, n6)
    n9 = ax("e-atom", "(= x1 x2)", "(E x2)")
    n10 = node("exch-l", "(E x2) (= x1 x2)", goal, n8)
    n11 = node("cut", "(= x1 x2) (= x1 x2)", goal, n9, n10)
    return node("contr-l", "(= x1 x2)", goal, n11)


# ------------------------------------------------------------- axioms


def axiom_files() -> dict[str, tuple[str, str, Proof]]:
    files = {}
    for family in FAMILIES:
        schema = schemas_of(family)[0]
        s = schema.sequent
        if family == "eq-refl":
            good = node("axiom", "(E (+ x1 x2))", "(= (+ x1 x2) (+ x1 x2))", axiom=family)
        else:
            good = Proof("axiom", s, axiom=family)
        variant = f" ({schema.variant})" if schema.variant else ""
        files[f"axiom_{family}.s02e"] = (f"instance of axiom {family}{variant}", "accept", good)

        if family.startswith("sep-"):
            bad_seq = Sequent(s.ants, s.sucs[:-1] + (s.sucs[-1].atom,))
            why = "equation where the axiom has a disequation"
        elif s.ants:
            bad_seq = Sequent(s.ants[1:], s.sucs)
            why = "first antecedent dropped"
        elif family == "e-zero":
            bad_seq = seq("", "(E (s1 0))")
            why = "E of a different numeral"
        elif family == "succ-zero":
            bad_seq = seq("", "(= (S 0) (s0 0))")
            why = "s0 in place of s1"
        else:
            bad_seq = Sequent((), (Atom("=", (s.sucs[0].args[0], parse_term("(s1 0)"))),))
            why = "wrong right-hand side"
        bad = Proof("axiom", bad_seq, axiom=family)
        files[f"axiom_{family}_bad.s02e"] = (f"near miss for axiom {family}: {why}", "reject axiom-mismatch", bad)
    return files


# -------------------------------------------------------------- rules


def rule_files() -> dict[str, tuple[str, str, Proof]]:
    f: dict[str, tuple[str, str, Proof]] = {}

    def add(name, desc, expect, proof):
        f[name] = (desc, expect, proof)

    add("ineq_axiom.s02e", "the inequality axiom E x -> 0 <= x", "accept", LE0)
    add("rule_axiom.s02e", "axiom rule without a family name", "accept",
        node("axiom", "", "(E 0)"))
    add("rule_axiom_bad.s02e", "axiom rule on a sequent matching no schema", "reject axiom-mismatch",
        node("axiom", "", "(<= 0 x1)"))

    add("rule_identity.s02e", "identity on an atom", "accept",
        node("identity", "(= x1 x1)", "(= x1 x1)"))
    add("rule_identity_bad.s02e", "identity on a conjunction", "reject not-atomic",
        node("identity", "(and (= x1 x1) (<= x1 x1))", "(and (= x1 x1) (<= x1 x1))"))

    add("rule_weak-l.s02e", "left weakening", "accept",
        node("weak-l", "(= x2 x2) (E x1)", "(<= 0 x1)", LE0))
    add("rule_weak-l_bad.s02e", "left weakening at the wrong end", "reject principal-mismatch",
        node("weak-l", "(E x1) (= x2 x2)", "(<= 0 x1)", LE0))

    add("rule_weak-r.s02e", "right weakening", "accept",
        node("weak-r", "(E x1)", "(<= 0 x1) (= x2 0)", LE0))
    add("rule_weak-r_bad.s02e", "right weakening at the wrong end", "reject principal-mismatch",
        node("weak-r", "(E x1)", "(= x2 0) (<= 0 x1)", LE0))

    dup_l = node("weak-l", "(E x1) (E x1)", "(<= 0 x1)", LE0)
    add("rule_contr-l.s02e", "left contraction", "accept", node("contr-l", "(E x1)", "(<= 0 x1)", dup_l))
    add("rule_contr-l_bad.s02e", "left contraction of two different formulas", "reject principal-mismatch",
        node("contr-l", "(E x1)", "(<= 0 x1)", node("weak-l", "(E x2) (E x1)", "(<= 0 x1)", LE0)))

    dup_r = node("weak-r", "(E x1)", "(<= 0 x1) (<= 0 x1)", LE0)
    add("rule_contr-r.s02e", "right contraction", "accept", node("contr-r", "(E x1)", "(<= 0 x1)", dup_r))
    add("rule_contr-r_bad.s02e", "right contraction that drops a formula", "reject principal-mismatch",
        node("contr-r", "(E x1)", "", dup_r))

    add("rule_exch-l.s02e", "left exchange", "accept",
        node("exch-l", "(= x2 x3) (= x1 x2)", "(= x1 x3)", EQ_TRANS))
    add("rule_exch-l_bad.s02e", "left exchange that alters a formula", "reject principal-mismatch",
        node("exch-l", "(= x2 x3) (= x2 x1)", "(= x1 x3)", EQ_TRANS))

    two_sucs = node("weak-r", "(E x1)", "(<= 0 x1) (= x1 x1)", LE0)
    add("rule_exch-r.s02e", "right exchange", "accept",
        node("exch-r", "(E x1)", "(= x1 x1) (<= 0 x1)", two_sucs))
    add("rule_exch-r_bad.s02e", "right exchange that also touches the antecedent", "reject principal-mismatch",
        node("exch-r", "(E x2)", "(= x1 x1) (<= 0 x1)", two_sucs))

    add("rule_neg-l.s02e", "left negation", "accept",
        node("neg-l", "(not (<= 0 x1)) (E x1)", "", LE0))
    add("rule_neg-l_bad.s02e", "left negation keeping the atom on the right", "reject principal-mismatch",
        node("neg-l", "(not (<= 0 x1)) (E x1)", "(<= 0 x1)", LE0))

    eq_s0 = ax("eq-succ", "(= x1 x2)", "(= (s0 x1) (s0 x2))")
    add("rule_neg-r.s02e", "right negation introduces E of the arguments", "accept",
        node("neg-r", "(E x1) (E x2)", "(= (s0 x1) (s0 x2)) (not (= x1 x2))", eq_s0))
    add("rule_neg-r_bad.s02e", "right negation missing E x2", "reject principal-mismatch",
        node("neg-r", "(E x1)", "(= (s0 x1) (s0 x2)) (not (= x1 x2))", eq_s0))

    add("rule_and-l1.s02e", "left conjunction, first form", "accept",
        node("and-l1", "(and (= x1 x2) (<= 0 x3)) (= x2 x3)", "(= x1 x3)", EQ_TRANS))
    add("rule_and-l1_bad.s02e", "conjunction with E is not a 1-form", "reject not-1-form",
        node("and-l1", "(and (E x1) (<= 0 x3))", "(<= 0 x1)", LE0))

    add("rule_and-l2.s02e", "left conjunction, second form", "accept",
        node("and-l2", "(and (<= 0 x3) (= x1 x2)) (= x2 x3)", "(= x1 x3)", EQ_TRANS))
    add("rule_and-l2_bad.s02e", "second form with the conjuncts in first-form order", "reject principal-mismatch",
        node("and-l2", "(and (= x1 x2) (<= 0 x3)) (= x2 x3)", "(= x1 x3)", EQ_TRANS))

    add("rule_and-r.s02e", "right conjunction", "accept",
        node("and-r", "(E x1)", "(and (<= 0 x1) (= x1 x1))", LE0, EQ_REFL))
    add("rule_and-r_bad.s02e", "right conjunction over different antecedents", "reject principal-mismatch",
        node("and-r", "(E x1)", "(and (<= 0 x1) (= x2 x2))", LE0, ax("eq-refl", "(E x2)", "(= x2 x2)")))

    e_le = ax("e-atom", "(<= x1 x2)", "(E x1)")
    e_eq = ax("e-atom", "(= x1 x2)", "(E x1)")
    add("rule_or-l.s02e", "left disjunction", "accept",
        node("or-l", "(or (<= x1 x2) (= x1 x2))", "(E x1)", e_le, e_eq))
    add("rule_or-l_bad.s02e", "left disjunction over different succedents", "reject principal-mismatch",
        node("or-l", "(or (<= x1 x2) (= x1 x2))", "(E x1)", e_le, ax("e-atom", "(= x1 x2)", "(E x2)")))

    add("rule_or-r1.s02e", "right disjunction, first form", "accept",
        node("or-r1", "(E x1)", "(or (<= 0 x1) (= x1 0))", LE0))
    add("rule_or-r1_bad.s02e", "first form naming the wrong disjunct", "reject principal-mismatch",
        node("or-r1", "(E x1)", "(or (= x1 0) (<= 0 x1))", LE0))
    add("rule_or-r2.s02e", "right disjunction, second form", "accept",
        node("or-r2", "(E x1)", "(or (= x1 0) (<= 0 x1))", LE0))
    add("rule_or-r2_bad.s02e", "second form naming the wrong disjunct", "reject principal-mismatch",
        node("or-r2", "(E x1)", "(or (<= 0 x1) (= x1 0))", LE0))

    add("rule_all-l.s02e", "left universal with t = x1", "accept",
        node("all-l", "(<= x1 (len x3)) (all x4 (len x3) (= x4 x2)) (= x2 x3)", "(= x1 x3)", EQ_TRANS,
             inst=[(4, parse_term("x1"))]))
    add("rule_all-l_bad.s02e", "left universal whose t <= s uses another bound", "reject bound-shape",
        node("all-l", "(<= x1 (len x2)) (all x4 (len x3) (= x4 x2)) (= x2 x3)", "(= x1 x3)", EQ_TRANS))

    add("rule_all-r.s02e", "right universal over a sharply bounded range", "accept", ALL_R_EXAMPLE)
    add("rule_all-r_bad.s02e", "eigenvariable occurs in the context", "reject eigenvariable",
        node("all-r", "(E (len x1)) (E x2)", "(all x3 (len x1) (<= 0 x3))",
             node("weak-l", "(<= x2 (len x1)) (E x2)", "(<= 0 x2)", ax("le-zero", "(E x2)", "(<= 0 x2)"))))

    pure = "(all x3 (len x2) (= x3 x3))"
    ex_l_prem = node("weak-l", f"(<= x2 x1) {pure} (E x1)", "(<= 0 x1)",
                     node("weak-l", f"{pure} (E x1)", "(<= 0 x1)", LE0))
    add("rule_ex-l.s02e", "left existential", "accept",
        node("ex-l", "(ex x4 x1 (all x3 (len x4) (= x3 x3))) (E x1)", "(<= 0 x1)", ex_l_prem))
    bad_prem = node("weak-l", f"(<= x2 x1) {pure} (E x2)", "(<= 0 x2)",
                    node("weak-l", f"{pure} (E x2)", "(<= 0 x2)", ax("le-zero", "(E x2)", "(<= 0 x2)")))
    add("rule_ex-l_bad.s02e", "left existential with the eigenvariable in the context", "reject eigenvariable",
        node("ex-l", "(ex x4 x1 (all x3 (len x4) (= x3 x3))) (E x2)", "(<= 0 x2)", bad_prem))

    ex_r_concl = "(ex x5 x1 (all x2 (len x5) (<= 0 x2)))"
    add("rule_ex-r.s02e", "right existential with witness x1", "accept",
        node("ex-r", "(<= x1 x1) (E (len x1))", ex_r_concl, ALL_R_EXAMPLE,
             inst=[(5, parse_term("x1"))]))
    add("rule_ex-r_bad.s02e", "instantiation disagrees with the witness", "reject inst-mismatch",
        node("ex-r", "(<= x1 x1) (E (len x1))", ex_r_concl, ALL_R_EXAMPLE,
             inst=[(5, parse_term("x2"))]))

    add("rule_cut.s02e", "cut on E x3", "accept", CUT_EXAMPLE)
    add("rule_cut_bad.s02e", "cut formulas differ", "reject principal-mismatch",
        node("cut", "(<= x3 (len x1))", "(<= 0 x3)",
             ax("e-atom", "(<= x3 (len x1))", "(E (len x1))"),
             ax("le-zero", "(E x3)", "(<= 0 x3)")))

    # Extra negative controls.
    add("not_one_form.s02e", "a universal over an existential is not a 1-form", "reject not-1-form",
        node("weak-r", "(E x1)", "(<= 0 x1) (all x2 (len x1) (ex x3 x1 (<= x3 x2)))", LE0))
    inner = node("weak-r", "(<= x3 (len x1)) (E (len x1))", "(all x2 (len x1) (<= 0 x2)) (<= 0 x3)",
                 node("weak-l", "(<= x3 (len x1)) (E (len x1))", "(all x2 (len x1) (<= 0 x2))", ALL_R_EXAMPLE))
    add("fvnf_reused_eigenvariable.s02e", "eigenvariable x3 used by two right universals on one branch",
        "reject fvnf",
        node("all-r", "(E (len x1)) (E (len x1))", "(all x2 (len x1) (<= 0 x2)) (all x4 (len x1) (<= 0 x4))", inner))
    add("example_12_nodes.s02e", "twelve-node proof of x1 = x2 -> 0 <= x1 and 0 <= x2", "accept",
        twelve_node_example())

    forged = Proof("axiom", seq("", "(= 0 (s1 0))"), axiom="e-zero")
    add("forged_zero_eq_one.s02e", "forged axiom node -> 0 = s1 0", "forged", forged)
    add("forged_empty_sequent.s02e", "forged cut deriving the empty sequent", "forged",
        Proof("cut", seq(), (forged, Proof("axiom", seq("(= 0 (s1 0))", ""), axiom="e-zero"))))
    return f


RAW = {
    "unknown_rule.s02e": (
        "unknown rule tag", "parse-error rule",
        "(proof modus-ponens (concl (seq (ants) (sucs (E 0)))) (prems))",
    ),
    "cut_premise_count.s02e": (
        "cut with a single premise", "parse-error premise-count",
        "(proof cut (concl (seq (ants) (sucs (E 0))))\n"
        "  (prems (proof (axiom e-zero) (concl (seq (ants) (sucs (E 0)))) (prems))))",
    ),
}


def verify(name: str, expect: str, p: Proof) -> None:
    kind, _, category = expect.partition(" ")
    try:
        check_proof(p)
        got = "accept"
    except ProofError as e:
        got = f"reject {e.category}"
    if kind == "forged":
        if got == "accept":
            sys.exit(f"{name}: forged proof was accepted")
        return
    if got != expect:
        sys.exit(f"{name}: expected {expect}, got {got}")


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for old in OUT.glob("*.s02e"):
        old.unlink()
    entries = {**axiom_files(), **rule_files()}
    for name, (desc, expect, proof) in sorted(entries.items()):
        verify(name, expect, proof)
        (OUT / name).write_text(f"; {desc}\n; expect: {expect}\n{print_proof(proof)}\n", encoding="utf-8")
    for name, (desc, expect, text) in RAW.items():
        (OUT / name).write_text(f"; {desc}\n; expect: {expect}\n{text}\n", encoding="utf-8")
    print(f"wrote {len(entries) + len(RAW)} files to {OUT}")


if __name__ == "__main__":
    main()
