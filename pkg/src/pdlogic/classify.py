"""Syntactic taxonomy of default theories and the orderedness check.

The fourteen default-shape classes (the Kautz-Selman / Stillman hierarchy)
are matched most-specific-first; a theory is labelled with the most
restrictive row whose pattern admits every one of its defaults.  Letters in
the patterns follow the usual convention: a, b, c stand for literals and
p, q, r for propositional variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import ClauseSizeError, NotSeminormalError
from .formulas import (
    TRUE,
    Formula,
    Literal,
    Var,
    as_literal,
    clausal_form,
    conj,
    flatten_conj,
)
from .solvers import GENERAL, HORN, LITERAL_SET, TWO_LITERAL, classify_objective
from .theory import Default, DefaultTheory

ROW_NAMES = {
    1: "disjunction-free",
    2: "unary",
    3: "disjunction-free ordered",
    4: "ordered unary",
    5: "disjunction-free normal",
    6: "Horn",
    7: "normal unary",
    8: "prerequisite-free",
    9: "prerequisite-free ordered",
    10: "prerequisite-free unary",
    11: "prerequisite-free ordered unary",
    12: "prerequisite-free normal",
    13: "prerequisite-free normal unary",
    14: "prerequisite-free positive normal unary",
}


def _is_lit(f: Formula) -> bool:
    return as_literal(f) is not None


def _is_var(f: Formula) -> bool:
    return isinstance(f, Var)


def _lit_conjuncts(f: Formula) -> list[Literal] | None:
    """Literals of a conjunction of literals, else None."""
    lits = [as_literal(g) for g in flatten_conj(f)]
    if any(l is None for l in lits):
        return None
    return lits  # type: ignore[return-value]


def _var_prereq(d: Default) -> bool:
    return d.prerequisite == TRUE or _is_var(d.prerequisite)


def _conj_var_prereq(d: Default) -> bool:
    if d.prerequisite == TRUE:
        return True
    lits = _lit_conjuncts(d.prerequisite)
    return lits is not None and all(l.positive for l in lits)


def _conj_lit_prereq(d: Default) -> bool:
    return d.prerequisite == TRUE or _lit_conjuncts(d.prerequisite) is not None


def _unary_shape(d: Default) -> bool:
    """p:q/q, p:q&~r/q or p:~q/~q (prerequisite shape checked separately)."""
    if len(d.justifications) != 1:
        return False
    if d.normal:
        return _is_lit(d.conclusion)
    if not _is_var(d.conclusion):
        return False
    parts = _lit_conjuncts(d.justifications[0])
    if parts is None or len(parts) != 2:
        return False
    q, r = parts
    return q == as_literal(d.conclusion) and not r.positive and r.name != q.name


def _seminormal_general(d: Default) -> bool:
    """Conclusion a conjunction of literals contained in the justification."""
    if len(d.justifications) != 1:
        return False
    concl = _lit_conjuncts(d.conclusion)
    just = _lit_conjuncts(d.justifications[0])
    return concl is not None and just is not None and set(concl) <= set(just)


def _normal_conj(d: Default) -> bool:
    return d.normal and _lit_conjuncts(d.conclusion) is not None


def _normal_lit(d: Default) -> bool:
    return d.normal and _is_lit(d.conclusion)


# Row predicates over a single default; ordered rows add a theory-level
# orderedness requirement handled in classify_theory.
_ROW_PATTERNS: list[tuple[int, Callable[[Default], bool], bool]] = [
    (14, lambda d: d.prerequisite_free and d.normal and _is_var(d.conclusion), False),
    (13, lambda d: d.prerequisite_free and _normal_lit(d), False),
    (12, lambda d: d.prerequisite_free and _normal_conj(d), False),
    (11, lambda d: d.prerequisite_free and _unary_shape(d), True),
    (10, lambda d: d.prerequisite_free and _unary_shape(d), False),
    (9, lambda d: d.prerequisite_free and _seminormal_general(d), True),
    (8, lambda d: d.prerequisite_free and _seminormal_general(d), False),
    (7, lambda d: _var_prereq(d) and _normal_lit(d), False),
    (6, lambda d: _conj_var_prereq(d) and _normal_lit(d), False),
    (5, lambda d: _conj_lit_prereq(d) and _normal_conj(d), False),
    (4, lambda d: _var_prereq(d) and _unary_shape(d), True),
    (3, lambda d: _conj_lit_prereq(d) and _seminormal_general(d), True),
    (2, lambda d: _var_prereq(d) and _unary_shape(d), False),
    (1, lambda d: _conj_lit_prereq(d) and _seminormal_general(d), False),
]


@dataclass(frozen=True, slots=True)
class TheoryClass:
    row: int | None            # None when no row pattern matches
    row_name: str
    objective: str
    ordered: bool | None       # None when the theory is not seminormal
    normal: bool
    prerequisite_free: bool


def classify_theory(thy: DefaultTheory) -> TheoryClass:
    ordered: bool | None
    try:
        ordered = is_ordered(thy)
    except (NotSeminormalError, ClauseSizeError):
        ordered = None

    row: int | None = None
    for number, pattern, needs_ordered in _ROW_PATTERNS:
        if needs_ordered and ordered is not True:
            continue
        if all(pattern(d) for d in thy.defaults):
            row = number
            break

    return TheoryClass(
        row=row,
        row_name=ROW_NAMES.get(row, "general"),
        objective=classify_objective(thy.objective),
        ordered=ordered,
        normal=thy.is_normal,
        prerequisite_free=all(d.prerequisite_free for d in thy.defaults),
    )


# ---------------------------------------------------------------------------
# orderedness

def seminormal_parts(d: Default) -> tuple[Formula, Formula]:
    """Split a seminormal default's justification into (conclusion, remainder).

    The justification must be a conjunction whose conjuncts include every
    conjunct of the conclusion; normal defaults yield remainder TRUE.
    """
    if len(d.justifications) != 1:
        raise NotSeminormalError(f"default {d.id!r} is not seminormal")
    if d.justifications[0] == d.conclusion:
        return d.conclusion, TRUE
    just = flatten_conj(d.justifications[0])
    concl = flatten_conj(d.conclusion)
    rest = list(just)
    for c in concl:
        if c not in rest:
            raise NotSeminormalError(f"default {d.id!r} is not seminormal")
        rest.remove(c)
    if not rest:
        return d.conclusion, TRUE
    return d.conclusion, conj(rest)


def _clauses_or_raise(f: Formula) -> tuple[frozenset[Literal], ...]:
    cs = clausal_form(f)
    if cs is None:
        raise ClauseSizeError("clausal form exceeds the distribution bound")
    return cs


def _clause_literals(f: Formula) -> set[Literal]:
    return {l for c in _clauses_or_raise(f) for l in c}


def is_ordered(thy: DefaultTheory) -> bool:
    """Orderedness of a seminormal theory.

    Two relations on literals are accumulated as a labelled digraph: a weak
    relation from the facts' clauses and from prerequisite-to-justification
    pairs, and a strong relation from the seminormal remainder and from
    pairs of disjuncts inside a justification clause.  A path counts as
    strong when it contains at least one strong edge; the theory is ordered
    iff no literal is strongly related to itself, i.e. iff no strong edge
    lies inside a cycle of the combined graph.
    """
    weak: set[tuple[Literal, Literal]] = set()
    strong: set[tuple[Literal, Literal]] = set()

    for w in thy.objective:
        for clause in _clauses_or_raise(w):
            for x in clause:
                for y in clause:
                    if x != y:
                        weak.add((x.complement(), y))

    for d in thy.defaults:
        beta, gamma = seminormal_parts(d)
        a_lits = _clause_literals(d.prerequisite)
        b_clauses = _clauses_or_raise(beta)
        b_lits = {l for c in b_clauses for l in c}
        g_lits = _clause_literals(gamma) if gamma != TRUE else set()
        for x in a_lits:
            for y in b_lits:
                weak.add((x, y))
        for x in g_lits:
            for y in b_lits:
                strong.add((x.complement(), y))
        for clause in b_clauses:
            for x in clause:
                for y in clause:
                    if x != y:
                        strong.add((x.complement(), y))

    adj: dict[Literal, set[Literal]] = {}
    for x, y in weak | strong:
        adj.setdefault(x, set()).add(y)
        adj.setdefault(y, set())

    comp = _scc(adj)
    return not any(comp[x] == comp[y] for x, y in strong)


def _scc(adj: dict[Literal, set[Literal]]) -> dict[Literal, int]:
    index: dict[Literal, int] = {}
    low: dict[Literal, int] = {}
    comp: dict[Literal, int] = {}
    counter = 0
    ncomp = 0
    for root in adj:
        if root in index:
            continue
        stack = [(root, iter(adj[root]))]
        index[root] = low[root] = counter
        counter += 1
        path = [root]
        on_path = {root}
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    path.append(w)
                    on_path.add(w)
                    stack.append((w, iter(adj[w])))
                    advanced = True
                    break
                if w in on_path:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
            if low[v] == index[v]:
                while True:
                    w = path.pop()
                    on_path.discard(w)
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


# ---------------------------------------------------------------------------
# known complexity of cautious reasoning (per shape row and objective class)

_COLS = {HORN: 0, TWO_LITERAL: 1, LITERAL_SET: 2}

_PTIME = "PTIME"
_CONP = "co-NP-hard"
_NP = "NP-hard"

#: Brewka / Baader-Hollunder consequence with arbitrary priorities.
STAGED_ARBITRARY = {r: (_CONP, _CONP, _CONP) for r in range(1, 13)}
STAGED_ARBITRARY[13] = (_CONP, _CONP, _PTIME)
STAGED_ARBITRARY[14] = (_CONP, _CONP, _PTIME)

#: Lexicographic consequence with total priorities.
LEX_TOTAL = {r: (_NP, _NP, _NP) for r in (1, 2, 3, 4, 5, 8, 9, 10, 11)}
LEX_TOTAL[6] = (_NP, _NP, _PTIME)
LEX_TOTAL[7] = (_NP, _NP, _PTIME)
for _r in (12, 13, 14):
    LEX_TOTAL[_r] = (_PTIME, _PTIME, _PTIME)

#: Lexicographic consequence with arbitrary priorities.
LEX_ARBITRARY = {r: (_CONP, _CONP, _CONP) for r in range(1, 13)}
LEX_ARBITRARY[13] = (_CONP, _CONP, _PTIME)
LEX_ARBITRARY[14] = (_CONP, _CONP, _PTIME)


def known_complexity(cls: TheoryClass) -> dict[str, str]:
    """Complexity of cautious reasoning for the class, per semantics/priority."""
    if cls.row is None or cls.objective == GENERAL:
        return {}
    col = _COLS[cls.objective]
    out = {
        "brewka/bh, arbitrary priorities": STAGED_ARBITRARY[cls.row][col],
        "brewka/bh, total priorities": "PTIME (tractable consequence tests)",
        "lex, total priorities": LEX_TOTAL[cls.row][col],
        "lex, arbitrary priorities": LEX_ARBITRARY[cls.row][col],
    }
    return out
