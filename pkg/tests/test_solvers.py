import random
from itertools import combinations

import pytest

from pdlogic.formulas import (
    FALSE,
    And,
    Literal,
    Not,
    Or,
    Var,
    negate,
    parse_formula,
)
from pdlogic.solvers import (
    GENERAL,
    HORN,
    LITERAL_SET,
    TWO_LITERAL,
    Consequences,
    classify_objective,
    entails,
    is_consistent,
    satisfiable,
)

from bruteforce import tt_consistent, tt_entails

P = parse_formula


def test_entails_examples():
    assert entails([P("priest")], P("priest"))
    assert entails([P("p"), P("p -> q")], P("q"))
    assert entails([P("a | b"), P("~a")], P("b"))
    assert entails([P("p"), P("~p")], P("whatever"))


def test_is_consistent_examples():
    assert is_consistent([])
    assert not is_consistent([P("p"), P("~p")])
    assert not is_consistent([P("a | b"), P("~a"), P("~b")])


def test_classify_objective_examples():
    assert classify_objective([P("priest")]) == LITERAL_SET
    assert classify_objective([P("~a | b"), P("~c")]) == HORN
    assert classify_objective([P("a | b")]) == TWO_LITERAL
    assert classify_objective([P("a | b | c")]) == GENERAL
    assert classify_objective([]) == LITERAL_SET
    # implications classify through their clausal form
    assert classify_objective([P("a -> b")]) == HORN


def test_marker_atom_is_satisfiable_but_never_spuriously_entailed():
    assert is_consistent([FALSE])
    assert not entails([P("p")], FALSE)
    assert entails([P("p"), P("p -> false")], FALSE)


def _random_formula(rng, names, depth=2):
    r = rng.random()
    if depth == 0 or r < 0.4:
        v = Var(rng.choice(names))
        return v if rng.random() < 0.5 else Not(v)
    op = rng.choice((And, Or))
    return op(_random_formula(rng, names, depth - 1),
              _random_formula(rng, names, depth - 1))


def test_entails_matches_truth_tables():
    rng = random.Random(11)
    names = ["a", "b", "c", "d"]
    for _ in range(300):
        base = [_random_formula(rng, names) for _ in range(rng.randint(0, 4))]
        query = _random_formula(rng, names)
        assert entails(base, query) == tt_entails(base, query)
        assert is_consistent(base) == tt_consistent(base)


def test_monotonicity():
    rng = random.Random(12)
    names = ["a", "b", "c"]
    for _ in range(200):
        base = [_random_formula(rng, names) for _ in range(rng.randint(0, 3))]
        extra = [_random_formula(rng, names) for _ in range(rng.randint(0, 3))]
        query = _random_formula(rng, names)
        if entails(base, query):
            assert entails(base + extra, query)


def test_refutation_equivalence():
    rng = random.Random(13)
    names = ["a", "b", "c"]
    for _ in range(200):
        base = [_random_formula(rng, names) for _ in range(rng.randint(0, 3))]
        query = _random_formula(rng, names)
        assert entails(base, query) == (not is_consistent(base + [negate(query)]))


def _clause_universe(names, max_len, horn_only=False):
    lits = [Literal(n, pol) for n in names for pol in (True, False)]
    out = []
    for k in range(1, max_len + 1):
        for combo in combinations(lits, k):
            if any(l.complement() in combo for l in combo):
                continue
            if horn_only and sum(1 for l in combo if l.positive) > 1:
                continue
            out.append(frozenset(combo))
    return out


def _tt_sat(clauses, names):
    from itertools import product
    for bits in product((False, True), repeat=len(names)):
        m = dict(zip(names, bits))
        if all(any(m[l.name] == l.positive for l in c) for c in clauses):
            return True
    return False


def test_backend_agreement_exhaustive_small():
    names = ["a", "b", "c"]
    units = _clause_universe(names, 1)
    twos = _clause_universe(names, 2)
    horns = _clause_universe(names, 3, horn_only=True)
    for universe, method in ((units, "literal-set"),
                             (twos, "two-literal-clauses"),
                             (horns, "horn-clauses")):
        for k in range(0, 3):
            for clause_set in combinations(universe, k):
                want = _tt_sat(clause_set, names)
                assert satisfiable(clause_set, method) == want
                assert satisfiable(clause_set, "general") == want
                assert satisfiable(clause_set) == want


def test_backend_agreement_random_five_variables():
    rng = random.Random(21)
    names = ["a", "b", "c", "d", "e"]
    units = _clause_universe(names, 1)
    twos = _clause_universe(names, 2)
    horns = _clause_universe(names, 3, horn_only=True)
    for universe, method in ((units, "literal-set"),
                             (twos, "two-literal-clauses"),
                             (horns, "horn-clauses")):
        for _ in range(500):
            clause_set = [rng.choice(universe) for _ in range(rng.randint(0, 6))]
            want = satisfiable(clause_set, "general")
            assert satisfiable(clause_set, method) == want
            assert want == _tt_sat(clause_set, names)


def test_general_backend_on_three_cnf():
    rng = random.Random(22)
    names = ["a", "b", "c", "d", "e"]
    threes = _clause_universe(names, 3)
    for _ in range(300):
        clause_set = [rng.choice(threes) for _ in range(rng.randint(0, 8))]
        assert satisfiable(clause_set) == _tt_sat(clause_set, names)


def test_entails_through_auxiliary_encoding():
    # distribution of this tower exceeds the clause bound, forcing the
    # satisfiability-preserving encoding; answers must not change
    f = P("a | b")
    for i in range(16):
        f = Or(And(f, Var("c")), And(f, Var("d")))
    assert entails([f], P("a | b"))
    assert not entails([f], P("a"))
    assert is_consistent([f])
    assert not is_consistent([f, P("~c & ~d")])


def test_consequences_handle_memoises():
    base = Consequences([P("p"), P("p -> q")])
    assert base.entails(P("q"))
    assert base.entails(P("q"))  # memo path
    assert base.is_consistent()
    assert not base.entails(FALSE)
def test_inconsistent_entails_constants():
    bad = Consequences([P("p"), P("~p")])
    assert bad.entails(P("true"))
    assert bad.entails(FALSE)
