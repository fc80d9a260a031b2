import random

import pytest
from hypothesis import given, strategies as st

from s02e.coding import (
    DecodeError,
    decode,
    decode_formula,
    decode_sequent,
    decode_term,
    encode,
    encode_formula,
    encode_sequent,
    encode_term,
    pack,
    unpack,
)
from s02e.gen import random_one_form, random_qf, random_term
from s02e.semantics import eval_closed
from s02e.sexpr import ParseError
from s02e.syntax import (
    ZERO,
    App,
    FormClass,
    Var,
    app,
    classify_form,
    free_vars,
    numeral,
    numeral_value,
    parse_formula,
    parse_sequent,
    parse_term,
    print_formula,
    print_sequent,
    print_term,
    substitute,
    subterms,
)

seeds = st.integers(min_value=0, max_value=2**32)


def test_parse_unary_numeral():
    assert parse_term("(s1 0)") == App("s1", (ZERO,))


def test_parse_cond_with_length():
    t = parse_term("(cond x1 0 (S (len x1)))")
    assert t == App("cond", (Var(1), ZERO, App("S", (App("len", (Var(1),)),))))


@pytest.mark.parametrize("text, category", [
    ("(cond 0 0)", "arity"),
    ("(s1 0", "syntax"),
    ("(frob 0)", "syntax"),
])
def test_term_errors(text, category):
    with pytest.raises(ParseError) as err:
        parse_term(text)
    assert err.value.category == category


def test_parse_pure_one_form_nesting():
    f = parse_formula("(ex x (+ x1 (s1 0)) (all y (len x1) (<= y y)))")
    assert classify_form(f) is FormClass.PURE1
    assert print_formula(f).startswith("(ex x")


@pytest.mark.parametrize("text", [
    "(all x (+ x1 x2) (= x x))",
    "(not (and (= 0 0) (= 0 0)))",
    "(and (= 0 0))",
])
def test_formula_errors(text):
    with pytest.raises(ParseError):
        parse_formula(text)


def test_error_reports_position():
    with pytest.raises(ParseError) as err:
        parse_formula("(and (= 0 0)\n  (not (or (= 0 0) (= 0 0))))")
    assert "2:" in str(err.value)


@pytest.mark.parametrize("n, text", [(0, "0"), (1, "(s1 0)"), (6, "(s0 (s1 (s1 0)))")])
def test_numerals(n, text):
    assert print_term(numeral(n)) == text
    assert eval_closed(numeral(n)) == n


@given(st.integers(min_value=0, max_value=2**200))
def test_numeral_round_trip(n):
    assert numeral_value(numeral(n)) == n
    assert eval_closed(numeral(n)) == n


def test_substitute_into_atom():
    assert substitute(parse_formula("(= x1 x1)"), 1, numeral(1)) == parse_formula("(= (s1 0) (s1 0))")
    assert substitute(parse_formula("(E x1)"), 1, parse_term("(+ x1 x2)")) == parse_formula("(E (+ x1 x2))")


def test_substitute_renames_bound_variable():
    f = parse_formula("(ex x x1 (= x x2))")  # x is x3
    g = substitute(f, 2, Var(3))
    assert 3 in free_vars(g)
    assert g.var != 3
    assert g.body.args[0] == Var(g.var) and g.body.args[1] == Var(3)


def test_substitute_leaves_bound_occurrences():
    f = parse_formula("(all x (len x1) (<= x x1))")
    assert substitute(f, f.var, ZERO) == f


@pytest.mark.parametrize("text, cls", [
    ("(ex x (s0 (s1 0)) (all y (len x) (<= y x)))", FormClass.PURE1),
    ("(E (# x1 x2))", FormClass.E_ATOM),
    ("(all y (len x1) (E y))", FormClass.NOT_ONE_FORM),
    ("(all y (len x1) (<= y x1))", FormClass.SHARPLY_BOUNDED_ALL),
    ("(or (= 0 0) (not (<= x1 0)))", FormClass.QUANTIFIER_FREE),
    ("(not (E x1))", FormClass.NOT_ONE_FORM),
    ("(and (E x1) (= 0 0))", FormClass.NOT_ONE_FORM),
    ("(all x (len x1) (ex y x1 (= y y)))", FormClass.NOT_ONE_FORM),
])
def test_classify(text, cls):
    assert classify_form(parse_formula(text)) is cls


def test_sequent_round_trip():
    text = "(seq (ants (E x1) (<= x1 x2)) (sucs (= x1 x1)))"
    s = parse_sequent(text)
    assert print_sequent(s) == text
    assert parse_sequent(print_sequent(s)) == s


@given(seeds)
def test_term_print_parse_round_trip(seed):
    t = random_term(random.Random(seed), 5, nvars=3, max_numeral=40)
    assert parse_term(print_term(t)) == t


@given(seeds)
def test_formula_print_parse_round_trip(seed):
    rng = random.Random(seed)
    f = random_one_form(rng, [1, 2])
    assert parse_formula(print_formula(f)) == f


# ----------------------------------------------------------------- coding


def test_zero_code_is_fixed():
    assert encode_term(ZERO) == encode_term(parse_term("0"))
    assert decode_term(encode_term(ZERO)) == ZERO


def test_decode_encode_small_term():
    t = parse_term("(+ (s1 0) 0)")
    assert decode(encode(t)) == t


@given(st.lists(st.integers(min_value=0, max_value=2**70), max_size=8))
def test_pack_unpack(fields):
    assert unpack(pack(fields)) == fields


@given(seeds)
def test_term_codes_round_trip_and_dominate_subterms(seed):
    t = random_term(random.Random(seed), 5, nvars=3, max_numeral=40)
    code = encode_term(t)
    assert decode_term(code) == t
    for s in subterms(t):
        if s != t:
            assert encode_term(s) < code


@given(seeds)
def test_formula_and_sequent_codes_round_trip(seed):
    rng = random.Random(seed)
    f = random_qf(rng, 3, [1, 2], 2)
    g = random_one_form(rng, [1])
    assert decode_formula(encode_formula(f)) == f
    assert decode_formula(encode_formula(g)) == g
    s = parse_sequent(f"(seq (ants {print_formula(f)}) (sucs {print_formula(g)}))")
    assert decode_sequent(encode_sequent(s)) == s


def test_codes_are_distinct_across_sorts():
    t = encode_term(ZERO)
    f = encode_formula(parse_formula("(= 0 0)"))
    s = encode_sequent(parse_sequent("(seq (ants) (sucs))"))
    assert len({t, f, s}) == 3
    with pytest.raises(DecodeError):
        decode_term(f)


def test_app_helper_matches_parser():
    assert app("#", Var(1), Var(2)) == parse_term("(# x1 x2)")
