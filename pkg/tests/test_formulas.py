import random

import pytest

from pdlogic.errors import FormulaSyntaxError
from pdlogic.formulas import (
    FALSE,
    TRUE,
    And,
    Imp,
    Literal,
    Not,
    Or,
    Var,
    as_literal,
    clausal_form,
    conj,
    disj,
    evaluate,
    flatten_conj,
    flatten_disj,
    format_formula,
    free_variables,
    iter_models,
    lit,
    negate,
    nnf,
    parse_formula,
)

from bruteforce import tt_entails


def test_parse_precedence():
    f = parse_formula("~a & b | c -> d")
    assert f == Imp(Or(And(Not(Var("a")), Var("b")), Var("c")), Var("d"))


def test_implication_right_associative():
    assert parse_formula("a -> b -> c") == Imp(Var("a"), Imp(Var("b"), Var("c")))


def test_parse_constants():
    assert parse_formula("true") == TRUE
    assert parse_formula("false") == FALSE
    # the falsity marker is the reserved atom, satisfiable on its own
    assert FALSE == Var("false")


def test_parse_identifier_characters():
    f = parse_formula("drinks-vodka & like-rock-n-roll")
    assert free_variables(f) == {"drinks-vodka", "like-rock-n-roll"}


@pytest.mark.parametrize("text", [
    "a", "~a", "a & b & c", "a | (b & ~c)", "a -> b -> ~c",
    "(a | b) & (c | d)", "~(a -> b)", "true | x", "~~x",
    "p' & __n1", "a & (b & c)",
])
def test_format_parse_roundtrip(text):
    f = parse_formula(text)
    assert parse_formula(format_formula(f)) == f


def test_format_parse_roundtrip_random():
    rng = random.Random(3)
    names = ["a", "b", "c"]

    def build(depth):
        r = rng.random()
        if depth == 0 or r < 0.3:
            return Var(rng.choice(names))
        if r < 0.45:
            return Not(build(depth - 1))
        op = rng.choice((And, Or, Imp))
        return op(build(depth - 1), build(depth - 1))

    for _ in range(300):
        f = build(4)
        assert parse_formula(format_formula(f)) == f


@pytest.mark.parametrize("text,col", [
    ("a &", 4), ("a $ b", 3), ("(a | b", 7), ("a b", 3),
])
def test_parse_errors_carry_position(text, col):
    with pytest.raises(FormulaSyntaxError) as err:
        parse_formula(text, line=7)
    assert err.value.line == 7
    assert err.value.column == col


def test_literal_complement_involution():
    l = lit("x", False)
    assert l.complement().complement() == l
    assert as_literal(l.formula()) == l
    assert as_literal(parse_formula("~x")) == Literal("x", False)
    assert as_literal(parse_formula("x & y")) is None


def test_negate_strips_double_negation():
    assert negate(Not(Var("a"))) == Var("a")
    assert negate(Var("a")) == Not(Var("a"))
    assert negate(TRUE).value is False


def test_flatten_and_builders():
    f = parse_formula("a & b & c")
    assert [format_formula(g) for g in flatten_conj(f)] == ["a", "b", "c"]
    assert conj([]) == TRUE
    assert flatten_disj(parse_formula("a | b | c")) == [Var("a"), Var("b"), Var("c")]
    assert conj([Var("a")]) == Var("a")
    assert disj([Var("a"), Var("b")]) == Or(Var("a"), Var("b"))


def test_clausal_form_examples():
    assert clausal_form(parse_formula("a -> b")) == (
        frozenset({Literal("a", False), Literal("b", True)}),)
    assert clausal_form(parse_formula("a | ~a")) == ()
    assert clausal_form(TRUE) == ()
    cs = clausal_form(parse_formula("(a | b) & ~c"))
    assert set(cs) == {frozenset({Literal("c", False)}),
                       frozenset({Literal("a", True), Literal("b", True)})}


def test_clausal_form_blowup_returns_none():
    # alternating and/or towers square the distributed size at each level
    f = parse_formula("a | b")
    for i in range(16):
        f = Or(And(f, Var(f"u{i}")), And(f, Var(f"v{i}")))
    assert clausal_form(f) is None


def test_clausal_form_agrees_with_evaluation():
    rng = random.Random(5)
    names = ["a", "b", "c"]

    def build(depth):
        r = rng.random()
        if depth == 0 or r < 0.35:
            return Var(rng.choice(names))
        if r < 0.5:
            return Not(build(depth - 1))
        op = rng.choice((And, Or, Imp))
        return op(build(depth - 1), build(depth - 1))

    for _ in range(200):
        f = build(3)
        cs = clausal_form(f)
        assert cs is not None
        for m in iter_models(names):
            want = evaluate(f, m)
            got = all(any(m.get(l.name, False) == l.positive for l in c)
                      for c in cs)
            assert want == got


def test_nnf_negation_semantics():
    f = parse_formula("~(a -> b & ~c)")
    g = nnf(f)
    for m in iter_models(["a", "b", "c"]):
        assert evaluate(f, m) == evaluate(g, m)


def test_iter_models_count():
    assert len(list(iter_models(["a", "b", "c"]))) == 8
    assert list(iter_models([])) == [{}]


def test_tt_oracle_sanity():
    assert tt_entails([parse_formula("a | b"), parse_formula("~a")],
                      parse_formula("b"))
    assert not tt_entails([], FALSE)
