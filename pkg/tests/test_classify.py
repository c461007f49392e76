import random

import pytest

from pdlogic.classify import (
    ROW_NAMES,
    classify_theory,
    is_ordered,
    known_complexity,
    seminormal_parts,
)
from pdlogic.errors import NotSeminormalError
from pdlogic.formulas import TRUE, And, Not, Var, parse_formula
from pdlogic.instances import (
    iter_normal_unary_theories,
    random_normal_theory,
    random_seminormal_theory,
)
from pdlogic.theory import Default, DefaultTheory, parse_theory

P = parse_formula


def _thy(text):
    return parse_theory(text)[0]


def test_prerequisite_free_normal_unary_rows():
    thy = _thy("W: p\nD: d1: true : q / q\nD: d2: true : ~q / ~q\n")
    cls = classify_theory(thy)
    assert cls.row == 13
    assert cls.row_name == "prerequisite-free normal unary"
    assert cls.objective == "literal-set"
    assert cls.normal and cls.prerequisite_free and cls.ordered

    thy = _thy("D: d1: true : q / q\n")
    assert classify_theory(thy).row == 14


def test_normal_unary_with_prerequisites():
    thy = _thy("W: priest\n"
               "D: d1: priest : ~drinks-vodka / ~drinks-vodka\n"
               "D: d2: man : drinks-vodka / drinks-vodka\n"
               "D: d3: priest : man / man\n")
    cls = classify_theory(thy)
    # every default is p:l/l, the most specific matching row
    assert cls.row == 7
    assert cls.row_name == "normal unary"


def test_row_assignments_across_shapes():
    # conjunction conclusion, prerequisite-free normal
    assert classify_theory(_thy("D: d: true : a & ~b / a & ~b\n")).row == 12
    # seminormal unary, prerequisite-free (and ordered)
    assert classify_theory(_thy("D: d: true : q & ~r / q\n")).row == 11
    # seminormal with conjunction conclusion, prerequisite-free
    assert classify_theory(_thy("D: d: true : a & b & ~c / a & b\n")).row == 9
    # Horn prerequisite
    assert classify_theory(_thy("D: d: p & q : r / r\n")).row == 6
    # literal-conjunction prerequisite forces the disjunction-free normal row
    assert classify_theory(_thy("D: d: p & ~q : r / r\n")).row == 5
    # seminormal unary with a variable prerequisite (ordered)
    assert classify_theory(_thy("D: d: p : q & ~r / q\n")).row == 4
    # seminormal general with a prerequisite
    assert classify_theory(_thy("D: d: p & ~s : a & b & ~c / a & b\n")).row == 3
    # disjunctive conclusion matches no row
    assert classify_theory(_thy("D: d: true : a | b / a | b\n")).row is None
    assert classify_theory(_thy("D: d: true : a | b / a | b\n")).row_name == "general"
    # multiple justifications match no row
    thy = DefaultTheory((Default("d", TRUE, (Var("a"), Var("b")), Var("a")),), ())
    assert classify_theory(thy).row is None


def test_mixed_theory_takes_weakest_row():
    thy = _thy("D: d1: true : q / q\nD: d2: p : r / r\n")
    assert classify_theory(thy).row == 7  # d2 forces prerequisites into the row


def test_specificity_never_drops_when_removing_defaults():
    rng = random.Random(9)
    theories = [t for t in iter_normal_unary_theories(3) if len(t.defaults) >= 2]
    for thy in rng.sample(theories, 150):
        full = classify_theory(thy).row
        for k in range(len(thy.defaults)):
            sub = DefaultTheory(thy.defaults[:k] + thy.defaults[k + 1:],
                                thy.objective)
            assert classify_theory(sub).row >= full


def test_is_ordered_mutual_guards_fail():
    thy = _thy("D: d1: true : p & ~q / p\nD: d2: true : q & ~p / q\n")
    assert not is_ordered(thy)
    assert classify_theory(thy).row == 10  # unary pattern but not ordered


def test_is_ordered_three_cycle_fails():
    thy = _thy("D: d1: true : a & ~b / a\n"
               "D: d2: true : b & ~c / b\n"
               "D: d3: true : c & ~a / c\n")
    assert not is_ordered(thy)


def test_is_ordered_weak_self_loops_allowed():
    # facts relate complements of co-disjuncts weakly in both directions;
    # weak cycles do not refute orderedness
    thy = _thy("W: a | b\nD: d: true : a / a\n")
    assert is_ordered(thy)


def test_disjunction_free_normal_theories_are_ordered():
    rng = random.Random(31)
    for _ in range(120):
        thy = random_normal_theory(rng, max_defaults=5,
                                   conjunction_conclusions=True)
        assert is_ordered(thy)


def test_is_ordered_rejects_non_seminormal():
    thy = DefaultTheory((Default("d", TRUE, (Var("a"),), Var("b")),), ())
    with pytest.raises(NotSeminormalError):
        is_ordered(thy)
    thy = DefaultTheory((Default("d", TRUE, (), Var("b")),), ())
    with pytest.raises(NotSeminormalError):
        is_ordered(thy)


def test_seminormal_parts():
    d = Default("d", TRUE, (P("q & ~r"),), Var("q"))
    beta, gamma = seminormal_parts(d)
    assert beta == Var("q") and gamma == P("~r")
    d2 = Default("d", TRUE, (Var("q"),), Var("q"))
    assert seminormal_parts(d2) == (Var("q"), TRUE)


def test_classify_handles_unordered_flag_on_seminormal_random():
    rng = random.Random(41)
    for _ in range(80):
        thy = random_seminormal_theory(rng, max_defaults=5)
        cls = classify_theory(thy)
        assert cls.ordered == is_ordered(thy)


def test_known_complexity_lookup():
    thy = _thy("W: p\nD: d1: true : q / q\nD: d2: true : ~q / ~q\n")
    table = known_complexity(classify_theory(thy))
    assert table["lex, arbitrary priorities"] == "PTIME"
    assert table["brewka/bh, arbitrary priorities"] == "PTIME"
    thy = _thy("D: d: p : q / q\n")  # normal unary, no facts
    table = known_complexity(classify_theory(thy))
    assert table["lex, total priorities"] == "PTIME"
    assert table["lex, arbitrary priorities"] == "co-NP-hard"
    assert known_complexity(classify_theory(
        _thy("W: a | b | c\nD: d: p : q / q\n"))) == {}


def test_row_names_cover_all_rows():
    assert set(ROW_NAMES) == set(range(1, 15))
