"""Polynomial-time decision procedures for the tractable classes, and a
dispatcher that routes queries to them.

Class preconditions are checked strictly: a theory outside the required
syntactic class raises ClassMismatchError instead of being approximated.
The procedures remain correct on any input that passes their class check;
the polynomial bound additionally needs the consequence tests to stay
inside a tractable fragment.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import ClassMismatchError, NotNormalError
from .formulas import TRUE, Formula, Literal, Var, as_literal, flatten_conj, negate
from .solvers import GENERAL, classify_objective, entails, is_consistent
from .theory import DefaultTheory, PriorityOrder
from .reiter import (
    EXHAUSTIVE_BOUND,
    Extension,
    _ctx,
    _generating_mask,
    entails_brave,
    entails_cautious,
)
from .staged import _brewka_run, bh_entails, brewka_entails, check_total_order
from .lexico import lex_entails

SEMANTICS = ("reiter", "brewka", "bh", "lex")


def _literal_of(f: Formula) -> Literal | None:
    return as_literal(f)


def _check_pfnu(thy: DefaultTheory) -> None:
    for d in thy.defaults:
        if not (d.prerequisite_free and d.normal and as_literal(d.conclusion)):
            raise ClassMismatchError(
                f"default {d.id!r} is not prerequisite-free normal unary")
    for w in thy.objective:
        if as_literal(w) is None:
            raise ClassMismatchError("objective part is not a set of literals")


def pfnu_decide(thy: DefaultTheory, priority: PriorityOrder, query: Literal,
                semantics: str = "lex") -> bool:
    """Cautious membership of a literal for prerequisite-free normal unary
    theories over literal facts, any strict partial order.

    One cascade answers all three prioritized semantics: facts win, then a
    missing pro-default loses, a missing contra-default wins, and otherwise
    only a pro-default strictly above a contra-default forces the literal.
    """
    if semantics not in ("brewka", "bh", "lex"):
        raise ValueError(f"unsupported semantics {semantics!r}")
    _check_pfnu(thy)
    w_lits = {as_literal(w) for w in thy.objective}
    if query in w_lits or any(l.complement() in w_lits for l in w_lits):
        return True
    if query.complement() in w_lits:
        return False
    pro = {d.id for d in thy.defaults if as_literal(d.conclusion) == query}
    if not pro:
        return False
    contra = {d.id for d in thy.defaults
              if as_literal(d.conclusion) == query.complement()}
    if not contra:
        return True
    return any(a in pro and b in contra for a, b in priority.pairs)


def bh_total_construct(thy: DefaultTheory,
                       order: Sequence[str]) -> Extension | None:
    """The unique preferred extension for a total order, or None when no
    preferred extension exists.

    Runs the staged construction with justifications tested against the
    stage; a preferred extension, being known only at the end, is accounted
    for by a final re-check that no fired default had a justification
    refuted later.  Polynomial whenever the entailment tests are.
    """
    check_total_order(order, thy.ids)
    ctx = _ctx(thy)
    fired, _ = _brewka_run(ctx, {id: k for k, id in enumerate(order)},
                           want_trace=False)
    final = ctx.base(fired)
    for i in range(ctx.n):
        if fired >> i & 1 and any(final.entails(nb) for nb in ctx.neg_justs[i]):
            return None
    return ctx.extension_of(_generating_mask(ctx, fired))


def _check_pf_normal(thy: DefaultTheory) -> None:
    for d in thy.defaults:
        if not (d.prerequisite_free and d.normal):
            raise ClassMismatchError(
                f"default {d.id!r} is not prerequisite-free normal")


def pfn_total_decide(thy: DefaultTheory, order: Sequence[str],
                     phi: Formula) -> bool:
    """Greedy construction for prerequisite-free normal theories under a
    total order: walk the conclusions from most to least significant,
    keeping each one that stays consistent; answer against the result.

    An inconsistent objective part keeps every conclusion out and answers
    True for every query.
    """
    _check_pf_normal(thy)
    check_total_order(order, thy.ids)
    by_id = {d.id: d for d in thy.defaults}
    base: list[Formula] = list(thy.objective)
    for id in order:
        c = by_id[id].conclusion
        if is_consistent(base + [c]):
            base.append(c)
    return entails(base, phi)


def _horn_parts(thy: DefaultTheory) -> tuple[set[Literal], list[tuple[str, list[str], Literal]]]:
    """(facts, [(id, prerequisite variables, conclusion literal)]); raises
    when the theory is outside the Horn default class."""
    facts: set[Literal] = set()
    for w in thy.objective:
        l = as_literal(w)
        if l is None:
            raise ClassMismatchError("objective part is not a set of literals")
        facts.add(l)
    rules = []
    for d in thy.defaults:
        concl = as_literal(d.conclusion)
        if concl is None or not d.normal:
            raise ClassMismatchError(
                f"default {d.id!r} is not a Horn default")
        if d.prerequisite == TRUE:
            pvars: list[str] = []
        else:
            parts = [as_literal(p) for p in flatten_conj(d.prerequisite)]
            if any(p is None or not p.positive for p in parts):
                raise ClassMismatchError(
                    f"default {d.id!r} has a non-conjunctive-atom prerequisite")
            pvars = [p.name for p in parts]  # type: ignore[union-attr]
        rules.append((d.id, pvars, concl))
    return facts, rules


def horn_exists(thy: DefaultTheory, applied: Iterable[str]) -> bool:
    """Existence of an extension applying all the named defaults, for Horn
    default theories over literal facts.

    Negative-conclusion defaults outside the required set cannot help
    derive prerequisites, so forward chaining over the required defaults
    plus the unblocked positive ones decides the question.
    """
    facts, rules = _horn_parts(thy)
    want = set(applied)
    unknown = want - {id for id, _, _ in rules}
    if unknown:
        raise ClassMismatchError(f"unknown default ids {sorted(unknown)}")

    if want:
        committed = set(facts)
        committed.update(concl for id, _, concl in rules if id in want)
        if any(l.complement() in committed for l in committed):
            return False

    banned = {concl.name for id, _, concl in rules
              if id in want and not concl.positive}
    chain = [(id, pvars, concl) for id, pvars, concl in rules
             if id in want
             or (concl.positive
                 and Literal(concl.name, False) not in facts
                 and concl.name not in banned)]

    derived = set(facts)
    contradictory = any(l.complement() in derived for l in derived)
    changed = True
    while changed:
        changed = False
        for id, pvars, concl in chain:
            if concl in derived:
                continue
            if contradictory or all(Literal(v, True) in derived for v in pvars):
                derived.add(concl)
                if concl.complement() in derived:
                    contradictory = True
                changed = True
    if contradictory:
        return True
    for id, pvars, concl in rules:
        if id in want and not all(Literal(v, True) in derived for v in pvars):
            return False
    return True


def horn_lex_total_decide(thy: DefaultTheory, order: Sequence[str],
                          phi: Formula) -> bool:
    """Greedy total-order decision for the Horn default class, with the
    forward-chaining existence test as its oracle."""
    check_total_order(order, thy.ids)
    _horn_parts(thy)
    if not horn_exists(thy, ()):
        return True
    committed: list[str] = []
    for id in order:
        if horn_exists(thy, committed + [id]):
            committed.append(id)
    chosen = set(committed)
    basis = list(thy.objective) + [d.conclusion for d in thy.defaults
                                   if d.id in chosen]
    return entails(basis, phi)


# ---------------------------------------------------------------------------
# routing

PATH_PFNU = "pfnu"
PATH_BH_TOTAL = "bh-total"
PATH_PFN_TOTAL = "pfn-total"
PATH_HORN_LEX = "horn-lex-total"
PATH_EXHAUSTIVE = "exhaustive"

FASTPATHS = (PATH_PFNU, PATH_BH_TOTAL, PATH_PFN_TOTAL, PATH_HORN_LEX)


def _pfnu_applicable(thy: DefaultTheory, phi: Formula) -> bool:
    try:
        _check_pfnu(thy)
    except ClassMismatchError:
        return False
    return as_literal(phi) is not None


def _pf_normal_tractable(thy: DefaultTheory) -> bool:
    try:
        _check_pf_normal(thy)
    except ClassMismatchError:
        return False
    pool = list(thy.objective) + [d.conclusion for d in thy.defaults]
    return classify_objective(pool) != GENERAL


def _horn_applicable(thy: DefaultTheory) -> bool:
    try:
        _horn_parts(thy)
    except ClassMismatchError:
        return False
    return True


def _run(path: str, thy: DefaultTheory, priority: PriorityOrder, phi: Formula,
         semantics: str, mode: str, bound: int) -> bool:
    if path == PATH_PFNU:
        l = as_literal(phi)
        if l is None:
            raise ClassMismatchError("query is not a literal")
        return pfnu_decide(thy, priority, l, semantics)
    if path == PATH_BH_TOTAL:
        if semantics == "brewka" and not thy.is_normal:
            raise NotNormalError("Brewka semantics requires a normal theory")
        ext = bh_total_construct(thy, priority.sequence(thy.ids))
        return True if ext is None else ext.contains(phi)
    if path == PATH_PFN_TOTAL:
        return pfn_total_decide(thy, priority.sequence(thy.ids), phi)
    if path == PATH_HORN_LEX:
        return horn_lex_total_decide(thy, priority.sequence(thy.ids), phi)
    # exhaustive engines
    if semantics == "reiter":
        if mode == "brave":
            return entails_brave(thy, phi, bound)
        return entails_cautious(thy, phi, bound)
    if semantics == "bh":
        return bh_entails(thy, priority, phi, bound)
    if semantics == "brewka":
        return brewka_entails(thy, priority, phi)
    return lex_entails(thy, priority, phi, bound)


def dispatch(thy: DefaultTheory, priority: PriorityOrder, phi: Formula,
             semantics: str, mode: str = "cautious", fastpath: str = "auto",
             bound: int = EXHAUSTIVE_BOUND) -> tuple[bool, str]:
    """Answer a consequence query, reporting which path produced it.

    `fastpath` is "auto" (most specific applicable procedure), "off"
    (exhaustive engines only), or the name of one path to force; forcing a
    path on an out-of-class input raises ClassMismatchError.
    """
    if semantics not in SEMANTICS:
        raise ValueError(f"unknown semantics {semantics!r}")
    if mode not in ("cautious", "brave"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "brave" and semantics != "reiter":
        raise ValueError("brave reasoning is defined for reiter semantics only")

    if fastpath in FASTPATHS:
        if fastpath != PATH_PFNU and not priority.is_total(thy.ids):
            raise ClassMismatchError(f"{fastpath} requires total priorities")
        return _run(fastpath, thy, priority, phi, semantics, mode, bound), fastpath
    if fastpath not in ("auto", "off"):
        raise ValueError(f"unknown fastpath {fastpath!r}")

    path = PATH_EXHAUSTIVE
    if fastpath == "auto" and semantics != "reiter":
        total = priority.is_total(thy.ids)
        if _pfnu_applicable(thy, phi):
            path = PATH_PFNU
        elif total and semantics in ("bh", "brewka"):
            path = PATH_BH_TOTAL
        elif total and semantics == "lex" and _pf_normal_tractable(thy):
            path = PATH_PFN_TOTAL
        elif total and semantics == "lex" and _horn_applicable(thy):
            path = PATH_HORN_LEX
    return _run(path, thy, priority, phi, semantics, mode, bound), path
