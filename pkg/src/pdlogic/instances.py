"""Instance families for the property suites.

Exhaustive families are used where the whole space is small enough to
sweep; seeded random families cover the rest.  Everything here is pure:
the same seed yields the same instances.
"""

from __future__ import annotations

import random
from itertools import combinations, product
from typing import Iterator, Sequence

from .formulas import TRUE, And, Formula, Literal, Not, Or, Var, conj
from .theory import Default, DefaultTheory, PriorityOrder, normal_default
from .reductions import CnfInstance, QbfInstance

DEFAULT_VARIABLES = ("x", "y", "z")


def literals_over(names: Sequence[str]) -> list[Literal]:
    return [Literal(n, pol) for n in names for pol in (True, False)]


# ---------------------------------------------------------------------------
# exhaustive families

def normal_unary_pool(names: Sequence[str] = DEFAULT_VARIABLES) -> list[Default]:
    """All normal defaults with a variable (or empty) prerequisite and a
    literal conclusion over the given variables."""
    pool = []
    prereqs: list[Formula] = [TRUE] + [Var(n) for n in names]
    for i, (pre, l) in enumerate(product(prereqs, literals_over(names))):
        pool.append(normal_default(f"d{i}", pre, l.formula()))
    return pool


def iter_normal_unary_theories(max_defaults: int,
                               names: Sequence[str] = DEFAULT_VARIABLES,
                               ) -> Iterator[DefaultTheory]:
    """Every theory with up to `max_defaults` defaults drawn from the
    normal-unary pool and an empty objective part."""
    pool = normal_unary_pool(names)
    for k in range(max_defaults + 1):
        for combo in combinations(pool, k):
            yield DefaultTheory(tuple(combo), ())


def iter_cnfs(max_vars: int, max_clauses: int,
              max_len: int | None = None) -> Iterator[CnfInstance]:
    """Every CNF over the first `max_vars` letters with up to `max_clauses`
    distinct non-tautological clauses of length <= max_len."""
    names = [chr(ord("a") + i) for i in range(max_vars)]
    max_len = max_len or max_vars
    lits = literals_over(names)
    pool = []
    for k in range(1, max_len + 1):
        for combo in combinations(lits, k):
            if any(l.complement() in combo for l in combo):
                continue
            pool.append(frozenset(combo))
    for k in range(max_clauses + 1):
        for clauses in combinations(pool, k):
            yield CnfInstance(tuple(clauses))


# ---------------------------------------------------------------------------
# random formulas and theories

def random_literal(rng: random.Random, names: Sequence[str]) -> Literal:
    return Literal(rng.choice(list(names)), rng.random() < 0.5)


def random_formula(rng: random.Random, names: Sequence[str],
                   depth: int = 2) -> Formula:
    r = rng.random()
    if depth == 0 or r < 0.4:
        return random_literal(rng, names).formula()
    if r < 0.55:
        return Not(random_formula(rng, names, depth - 1))
    op = rng.choice((And, Or))
    return op(random_formula(rng, names, depth - 1),
              random_formula(rng, names, depth - 1))


def random_partial_order(rng: random.Random, ids: Sequence[str],
                         density: float = 0.3) -> PriorityOrder:
    """Random strict partial order: a random ranking with random comparable
    pairs kept, closed transitively."""
    ranked = list(ids)
    rng.shuffle(ranked)
    pairs = [(ranked[i], ranked[j])
             for i in range(len(ranked)) for j in range(i + 1, len(ranked))
             if rng.random() < density]
    return PriorityOrder.of(pairs, ids)


def random_total_order(rng: random.Random, ids: Sequence[str]) -> tuple[str, ...]:
    ranked = list(ids)
    rng.shuffle(ranked)
    return tuple(ranked)


def random_row13_theory(rng: random.Random, max_defaults: int = 8,
                        names: Sequence[str] = ("a", "b", "c", "d", "e", "f"),
                        allow_facts: bool = True) -> DefaultTheory:
    """Prerequisite-free normal unary defaults over literal facts."""
    nd = rng.randint(0, max_defaults)
    ds = [normal_default(f"d{i}", TRUE, random_literal(rng, names).formula())
          for i in range(nd)]
    facts: list[Formula] = []
    if allow_facts and rng.random() < 0.6:
        for _ in range(rng.randint(1, 3)):
            facts.append(random_literal(rng, names).formula())
    return DefaultTheory(tuple(ds), tuple(facts))


def random_normal_theory(rng: random.Random, max_defaults: int = 6,
                         names: Sequence[str] = ("a", "b", "c", "d"),
                         conjunction_conclusions: bool = False) -> DefaultTheory:
    """Normal defaults with literal-conjunction prerequisites."""
    nd = rng.randint(0, max_defaults)
    ds = []
    for i in range(nd):
        r = rng.random()
        if r < 0.4:
            pre: Formula = TRUE
        elif r < 0.8:
            pre = random_literal(rng, names).formula()
        else:
            pre = And(random_literal(rng, names).formula(),
                      random_literal(rng, names).formula())
        if conjunction_conclusions and rng.random() < 0.3:
            concl: Formula = And(random_literal(rng, names).formula(),
                                 random_literal(rng, names).formula())
        else:
            concl = random_literal(rng, names).formula()
        ds.append(normal_default(f"d{i}", pre, concl))
    facts = tuple(random_literal(rng, names).formula()
                  for _ in range(rng.randint(0, 2)))
    return DefaultTheory(tuple(ds), facts)


def random_seminormal_theory(rng: random.Random, max_defaults: int = 6,
                             names: Sequence[str] = ("a", "b", "c", "d"),
                             ) -> DefaultTheory:
    """Seminormal defaults (conclusion plus a guard literal), some normal."""
    nd = rng.randint(1, max_defaults)
    ds = []
    for i in range(nd):
        pre: Formula = TRUE if rng.random() < 0.5 else random_literal(rng, names).formula()
        concl = random_literal(rng, names).formula()
        if rng.random() < 0.5:
            guard = random_literal(rng, names).formula()
            ds.append(Default(f"d{i}", pre, (And(concl, guard),), concl))
        else:
            ds.append(normal_default(f"d{i}", pre, concl))
    facts = tuple(random_literal(rng, names).formula()
                  for _ in range(rng.randint(0, 2)))
    return DefaultTheory(tuple(ds), facts)


def random_general_theory(rng: random.Random, max_defaults: int = 6,
                          names: Sequence[str] = ("a", "b", "c", "d"),
                          ) -> DefaultTheory:
    """Unrestricted small theories: arbitrary formulas, zero or more
    justifications."""
    nd = rng.randint(0, max_defaults)
    ds = []
    for i in range(nd):
        pre = TRUE if rng.random() < 0.4 else random_formula(rng, names, 1)
        njust = rng.choice((0, 1, 1, 1, 2))
        justs = tuple(random_formula(rng, names, 1) for _ in range(njust))
        ds.append(Default(f"d{i}", pre, justs, random_formula(rng, names, 1)))
    facts = tuple(random_formula(rng, names, 1)
                  for _ in range(rng.randint(0, 2)))
    return DefaultTheory(tuple(ds), facts)


def random_horn_theory(rng: random.Random, max_defaults: int = 8,
                       names: Sequence[str] = ("a", "b", "c", "d", "e"),
                       ) -> DefaultTheory:
    """Defaults with conjunctive-atom prerequisites and literal conclusions
    over literal facts (the Horn default class)."""
    nd = rng.randint(0, max_defaults)
    ds = []
    for i in range(nd):
        npre = rng.choice((0, 1, 1, 2))
        pre = conj([Var(rng.choice(list(names))) for _ in range(npre)])
        ds.append(normal_default(f"d{i}", pre, random_literal(rng, names).formula()))
    facts = tuple(random_literal(rng, names).formula()
                  for _ in range(rng.randint(0, 3)))
    return DefaultTheory(tuple(ds), facts)


def random_pfn_theory(rng: random.Random, max_defaults: int = 8,
                      names: Sequence[str] = ("a", "b", "c", "d", "e"),
                      ) -> DefaultTheory:
    """Prerequisite-free normal defaults whose conclusions and facts stay
    inside one tractable clause fragment (Horn here)."""
    nd = rng.randint(0, max_defaults)
    ds = []
    for i in range(nd):
        k = rng.choice((1, 1, 2))
        lits = [random_literal(rng, names) for _ in range(k)]
        while sum(1 for l in lits if l.positive) > 1:  # keep clauses Horn
            lits = [random_literal(rng, names) for _ in range(k)]
        concl: Formula = lits[0].formula()
        for l in lits[1:]:
            concl = Or(concl, l.formula())
        ds.append(normal_default(f"d{i}", TRUE, concl))
    facts = tuple(random_literal(rng, names).formula()
                  for _ in range(rng.randint(0, 2)))
    return DefaultTheory(tuple(ds), facts)


def random_cnf(rng: random.Random, max_vars: int = 3, max_clauses: int = 3,
               max_len: int = 3, force_unsat: bool = False) -> CnfInstance:
    names = [chr(ord("a") + i) for i in range(max_vars)]
    if force_unsat:
        # complementary unit pair plus noise
        v = rng.choice(names)
        clauses = [frozenset([Literal(v, True)]), frozenset([Literal(v, False)])]
        extra = rng.randint(0, max(0, max_clauses - 2))
    else:
        clauses = []
        extra = rng.randint(1, max_clauses)
    for _ in range(extra):
        k = rng.randint(1, max_len)
        chosen = rng.sample(names, min(k, len(names)))
        clauses.append(frozenset(Literal(n, rng.random() < 0.5) for n in chosen))
    return CnfInstance(tuple(clauses))


def random_qbf(rng: random.Random, n: int, depth: int = 3) -> QbfInstance:
    names = [f"x1_{i+1}" for i in range(n)] + [f"x2_{i+1}" for i in range(n)]
    return QbfInstance(n, random_formula(rng, names, depth))
