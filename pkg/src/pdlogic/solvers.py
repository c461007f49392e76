"""Consequence testing: entailment, consistency, and fragment solvers.

Formulas are compiled to integer-coded clauses once and cached.  A clause
set is routed to the cheapest complete backend for its shape:

    literal-set            complementary-pair check
    horn-clauses           unit propagation
    two-literal-clauses    implication graph + strongly connected components
    general                DPLL with unit propagation

All four backends decide satisfiability exactly; the shape only buys time.
Formulas whose distributive clausal form would blow up are encoded with
fresh auxiliary variables instead (satisfiability-preserving, which is all
entailment needs).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .formulas import (
    Clause,
    Formula,
    Literal,
    clausal_form,
    negate,
    nnf,
    And,
    Or,
    Not,
    Var,
    Const,
    as_literal,
)

LITERAL_SET = "literal-set"
TWO_LITERAL = "two-literal-clauses"
HORN = "horn-clauses"
GENERAL = "general"

# ---------------------------------------------------------------------------
# variable interning

_ids: dict[str, int] = {}
_names: list[str] = [""]


def _vid(name: str) -> int:
    i = _ids.get(name)
    if i is None:
        i = len(_names)
        _ids[name] = i
        _names.append(name)
    return i


def _fresh_vid() -> int:
    # Auxiliary variable without a name; can never collide with user input.
    _names.append("")
    return len(_names) - 1


IClause = frozenset[int]
_EMPTY: IClause = frozenset()


def _encode(c: Clause) -> IClause:
    return frozenset(_vid(l.name) if l.positive else -_vid(l.name) for l in c)


def _tseitin(f: Formula) -> tuple[IClause, ...]:
    """Equisatisfiable clauses for f using fresh variables.

    Subformulas are encoded once per identity, so shared structure keeps
    the encoding linear in the DAG size.
    """
    out: list[IClause] = []
    memo: dict[int, int] = {}

    def enc(g: Formula) -> int:
        got = memo.get(id(g))
        if got is not None:
            return got
        l = as_literal(g)
        if l is not None:
            x = _vid(l.name) if l.positive else -_vid(l.name)
        elif isinstance(g, Const):
            x = _fresh_vid()
            out.append(frozenset([x if g.value else -x]))
        elif isinstance(g, Not):
            x = -enc(g.operand)
        elif isinstance(g, (And, Or)):
            a, b = enc(g.left), enc(g.right)
            x = _fresh_vid()
            if isinstance(g, And):
                out.append(frozenset([-x, a]))
                out.append(frozenset([-x, b]))
                out.append(frozenset([x, -a, -b]))
            else:
                out.append(frozenset([-x, a, b]))
                out.append(frozenset([x, -a]))
                out.append(frozenset([x, -b]))
        else:
            raise TypeError(f"unexpected NNF node: {g!r}")
        memo[id(g)] = x
        return x

    out.append(frozenset([enc(nnf(f))]))
    return tuple(out)


@lru_cache(maxsize=65536)
def int_clauses(f: Formula) -> tuple[IClause, ...]:
    cs = clausal_form(f)
    if cs is not None:
        return tuple(_encode(c) for c in cs)
    return _tseitin(f)


# ---------------------------------------------------------------------------
# clause-shape classification

def classify_clause_set(clauses: Iterable[IClause]) -> str:
    all_unit = True
    all_horn = True
    all_two = True
    for c in clauses:
        n = len(c)
        if n != 1:
            all_unit = False
        if n > 2:
            all_two = False
        if sum(1 for l in c if l > 0) > 1:
            all_horn = False
    if all_unit:
        return LITERAL_SET
    if all_horn:
        return HORN
    if all_two:
        return TWO_LITERAL
    return GENERAL


def classify_objective(formulas: Iterable[Formula]) -> str:
    """Most restrictive shape label that admits every formula's clausal form.

    A set that is both two-literal and Horn is labelled Horn; the label
    choice never changes a complexity-table lookup since the Horn and
    two-literal columns agree everywhere.
    """
    clauses: list[IClause] = []
    for f in formulas:
        cs = clausal_form(f)
        if cs is None:
            return GENERAL
        clauses.extend(_encode(c) for c in cs)
    return classify_clause_set(clauses)


# ---------------------------------------------------------------------------
# satisfiability backends

def _sat_units(clauses: Sequence[IClause]) -> bool:
    seen: set[int] = set()
    for c in clauses:
        (l,) = c
        if -l in seen:
            return False
        seen.add(l)
    return True


def _sat_horn(clauses: Sequence[IClause]) -> bool:
    # Unit propagation decides Horn satisfiability: once no unit clause is
    # left, setting every undecided variable false satisfies the rest.
    assign: dict[int, bool] = {}
    work = [c for c in clauses]
    while True:
        changed = False
        for c in work:
            unassigned = []
            satisfied = False
            for l in c:
                v = assign.get(abs(l))
                if v is None:
                    unassigned.append(l)
                elif (l > 0) == v:
                    satisfied = True
                    break
            if satisfied:
                continue
            if not unassigned:
                return False
            if len(unassigned) == 1:
                l = unassigned[0]
                assign[abs(l)] = l > 0
                changed = True
        if not changed:
            return True


def _sat_2sat(clauses: Sequence[IClause]) -> bool:
    # Implication graph over literals; unsatisfiable iff some variable and
    # its complement share a strongly connected component.
    adj: dict[int, list[int]] = {}
    nodes: set[int] = set()

    def edge(u: int, v: int) -> None:
        adj.setdefault(u, []).append(v)
        nodes.add(u)
        nodes.add(v)

    for c in clauses:
        ls = list(c)
        if not ls:
            return False
        if len(ls) == 1:
            edge(-ls[0], ls[0])
        else:
            a, b = ls
            edge(-a, b)
            edge(-b, a)

    index: dict[int, int] = {}
    low: dict[int, int] = {}
    comp: dict[int, int] = {}
    counter = 0
    ncomp = 0
    for root in nodes:
        if root in index:
            continue
        stack = [(root, 0)]
        path: list[int] = []
        on_path: set[int] = set()
        while stack:
            v, ei = stack[-1]
            if ei == 0:
                index[v] = low[v] = counter
                counter += 1
                path.append(v)
                on_path.add(v)
            succs = adj.get(v, ())
            if ei < len(succs):
                stack[-1] = (v, ei + 1)
                w = succs[ei]
                if w not in index:
                    stack.append((w, 0))
                elif w in on_path:
                    low[v] = min(low[v], index[w])
            else:
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
    return not any(l > 0 and -l in nodes and comp[l] == comp[-l] for l in nodes)


def _sat_dpll(clauses: Sequence[IClause]) -> bool:
    def solve(cs: list[IClause]) -> bool:
        # unit propagation
        while True:
            unit = None
            for c in cs:
                if not c:
                    return False
                if len(c) == 1:
                    (unit,) = c
                    break
            if unit is None:
                break
            nxt = []
            for c in cs:
                if unit in c:
                    continue
                if -unit in c:
                    c = c - {-unit}
                nxt.append(c)
            cs = nxt
        if not cs:
            return True
        l = next(iter(cs[0]))
        pos = [c - {-l} for c in cs if l not in c]
        if solve(pos):
            return True
        neg = [c - {l} for c in cs if -l not in c]
        return solve(neg)

    return solve(list(clauses))


_BACKENDS = {
    LITERAL_SET: _sat_units,
    HORN: _sat_horn,
    TWO_LITERAL: _sat_2sat,
    GENERAL: _sat_dpll,
}


def satisfiable_clauses(clauses: Sequence[IClause], method: str | None = None) -> bool:
    """Satisfiability of integer-coded clauses; `method` forces one backend."""
    if method is None:
        method = classify_clause_set(clauses)
    return _BACKENDS[method](clauses)


def satisfiable(clauses: Iterable[Clause], method: str | None = None) -> bool:
    """Satisfiability of named-literal clauses (test and oracle entry point)."""
    return satisfiable_clauses([_encode(c) for c in clauses], method)


# ---------------------------------------------------------------------------
# consequence handles

class Consequences:
    """Entailment oracle for a fixed base, with per-query memoisation."""

    __slots__ = ("clauses", "units", "_unit_incons", "_memo", "_consistent")

    def __init__(self, formulas: Iterable[Formula]):
        cs: list[IClause] = []
        for f in formulas:
            cs.extend(int_clauses(f))
        self.clauses: tuple[IClause, ...] = tuple(cs)
        self._memo: dict[Formula, bool] = {}
        self._consistent: bool | None = None
        if all(len(c) == 1 for c in cs):
            units = frozenset(next(iter(c)) for c in cs)
            self.units: frozenset[int] | None = units
            self._unit_incons = any(-l in units for l in units)
            self._consistent = not self._unit_incons
        else:
            self.units = None
            self._unit_incons = False

    def is_consistent(self) -> bool:
        if self._consistent is None:
            self._consistent = satisfiable_clauses(self.clauses)
        return self._consistent

    def entails(self, query: Formula) -> bool:
        hit = self._memo.get(query)
        if hit is not None:
            return hit
        ans = self._compute(query)
        self._memo[query] = ans
        return ans

    def _compute(self, query: Formula) -> bool:
        if isinstance(query, Const):
            return True if query.value else not self.is_consistent()
        units = self.units
        if units is not None:
            if self._unit_incons:
                return True
            l = as_literal(query)
            if l is not None:
                code = _vid(l.name) if l.positive else -_vid(l.name)
                return code in units
            residual: list[IClause] = []
            for c in int_clauses(negate(query)):
                if c & units:
                    continue
                c = frozenset(l for l in c if -l not in units)
                if not c:
                    return True
                residual.append(c)
            if not residual:
                return False
            return not satisfiable_clauses(residual)
        neg = int_clauses(negate(query))
        return not satisfiable_clauses(self.clauses + neg)

    def entails_all(self, queries: Iterable[Formula]) -> bool:
        return all(self.entails(q) for q in queries)


@lru_cache(maxsize=4096)
def _handle(base: frozenset[Formula]) -> Consequences:
    return Consequences(base)


def handle(base: Iterable[Formula]) -> Consequences:
    """A memoised Consequences instance for the given base."""
    return _handle(frozenset(base))


def entails(base: Iterable[Formula], query: Formula) -> bool:
    """True iff every model of the base satisfies the query.

    An inconsistent base entails everything.
    """
    return _handle(frozenset(base)).entails(query)


def is_consistent(base: Iterable[Formula]) -> bool:
    return _handle(frozenset(base)).is_consistent()
