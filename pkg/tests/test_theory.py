import random
from itertools import permutations

import pytest

from pdlogic.errors import (
    DuplicateDefaultError,
    PriorityCycleError,
    TheorySyntaxError,
    UnknownDefaultError,
)
from pdlogic.formulas import TRUE, Var, parse_formula
from pdlogic.instances import random_general_theory, random_partial_order
from pdlogic.theory import (
    Default,
    DefaultTheory,
    PriorityOrder,
    linear_extensions,
    parse_theory,
    serialize_theory,
    validate_priority,
)

P = parse_formula


def test_parse_drinking_priest_fixture():
    thy, pri = parse_theory(open("fixtures/drinking_priest.theory").read())
    assert len(thy.defaults) == 3
    assert thy.objective == (Var("priest"),)
    assert pri.pairs == frozenset()
    d = thy.by_id("d_nodrink")
    assert d.prerequisite == Var("priest")
    assert d.justifications == (P("~drinks-vodka"),)
    assert d.conclusion == P("~drinks-vodka")


def test_parse_minimal_sections():
    thy, pri = parse_theory("W: p\n")
    assert thy.defaults == ()
    assert thy.objective == (Var("p"),)
    assert pri.pairs == frozenset()


def test_parse_empty_justifications_and_true_prerequisite():
    thy, _ = parse_theory("D: d1: p : / q\nD: d2: true : a, b / c\n")
    assert thy.by_id("d1").justifications == ()
    assert thy.by_id("d2").prerequisite == TRUE
    assert thy.by_id("d2").justifications == (Var("a"), Var("b"))
    assert thy.by_id("d2").prerequisite_free


def test_parse_comments_and_blanks():
    text = "# header\n\nW: p  # trailing comment\n"
    thy, _ = parse_theory(text)
    assert thy.objective == (Var("p"),)


def test_priority_cycle_error():
    text = "D: d1: true : a / a\nD: d2: true : b / b\nP: d1 > d2\nP: d2 > d1\n"
    with pytest.raises(PriorityCycleError) as err:
        parse_theory(text)
    assert "d1" in str(err.value) and "d2" in str(err.value)


def test_unknown_default_error():
    with pytest.raises(UnknownDefaultError):
        parse_theory("D: d1: true : a / a\nP: d1 > nosuch\n")


def test_duplicate_default_error():
    with pytest.raises(DuplicateDefaultError):
        parse_theory("D: d1: true : a / a\nD: d1: true : b / b\n")


def test_syntax_error_reports_line():
    with pytest.raises(TheorySyntaxError) as err:
        parse_theory("W: p\nD: broken\n")
    assert err.value.line == 2


def test_serialize_parse_identity():
    rng = random.Random(17)
    for _ in range(60):
        thy = random_general_theory(rng, max_defaults=5)
        pri = random_partial_order(rng, thy.ids)
        text = serialize_theory(thy, pri)
        thy2, pri2 = parse_theory(text)
        assert thy2.defaults == thy.defaults
        assert thy2.objective == thy.objective
        assert pri2.pairs == pri.pairs


def test_validate_priority_closure():
    thy, _ = parse_theory("D: a: true : x / x\nD: b: true : y / y\n"
                          "D: c: true : z / z\n")
    pri = validate_priority([("a", "b"), ("b", "c")], thy)
    assert ("a", "c") in pri.pairs
    assert validate_priority([], thy).pairs == frozenset()
    with pytest.raises(PriorityCycleError):
        validate_priority([("a", "b"), ("b", "a")], thy)


def test_priority_order_queries():
    pri = PriorityOrder.total(("a", "b", "c"))
    assert pri.higher("a", "c") and not pri.higher("c", "a")
    assert pri.is_total(["a", "b", "c"])
    assert pri.sequence(["c", "a", "b"]) == ("a", "b", "c")
    assert not PriorityOrder.of([("a", "b")]).is_total(["a", "b", "c"])
    assert PriorityOrder.total(("a", "b", "c")).restricted_to(["a", "c"]).pairs \
        == frozenset({("a", "c")})


def test_linear_extensions_counts():
    empty = PriorityOrder.empty()
    assert len(list(linear_extensions(empty, ["a", "b", "c"]))) == 6
    total = PriorityOrder.total(("a", "b", "c"))
    assert list(linear_extensions(total, ["a", "b", "c"])) == [("a", "b", "c")]
    one = PriorityOrder.of([("a", "b")])
    assert len(list(linear_extensions(one, ["a", "b", "c"]))) == 3


def test_linear_extensions_against_permutation_filter():
    rng = random.Random(23)
    for trial in range(25):
        n = rng.randint(1, 5)
        ids = [f"d{i}" for i in range(n)]
        pri = random_partial_order(rng, ids, density=0.4)
        got = list(linear_extensions(pri, ids))
        want = [p for p in permutations(sorted(ids))
                if all(p.index(a) < p.index(b) for a, b in pri.pairs)]
        assert got == want  # same orders, same lexicographic emission order
        assert len(set(got)) == len(got)


def test_linear_extensions_six_elements():
    ids = [f"d{i}" for i in range(6)]
    pri = PriorityOrder.of([("d0", "d3"), ("d1", "d4"), ("d2", "d5")])
    got = list(linear_extensions(pri, ids))
    want = [p for p in permutations(ids)
            if all(p.index(a) < p.index(b) for a, b in pri.pairs)]
    assert len(got) == len(want) == 90


def test_default_flags():
    d = Default("d", TRUE, (Var("q"),), Var("q"))
    assert d.normal and d.prerequisite_free
    d2 = Default("d", Var("p"), (P("q & ~r"),), Var("q"))
    assert not d2.normal and not d2.prerequisite_free
    assert DefaultTheory((d,), ()).is_normal
