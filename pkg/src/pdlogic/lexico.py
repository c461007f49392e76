"""Lexicographic prioritized semantics.

A default is applied in an extension when its prerequisite is derivable
and no justification is refuted; whether the conclusion is already present
plays no role.  Extensions are ranked by comparing their applied-default
vectors along a total order, most significant first; an extension is
preferred when some linear extension of the priorities makes it maximal.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import BoundExceededError
from .formulas import Formula
from .solvers import entails
from .theory import DefaultTheory, Default, PriorityOrder, digraph_reaches
from .reiter import (
    EXHAUSTIVE_BOUND,
    Extension,
    _ctx,
    applies,
    enumerate_extensions,
    exists_extension_applying,
)
from .staged import check_total_order

is_applied = applies

WITNESS_BOUND = 1_000_000


def applied_ids(thy: DefaultTheory, ext: Extension) -> frozenset[str]:
    """Ids of the defaults applied in the extension (memoised per theory)."""
    ctx = _ctx(thy)
    got = ctx.appl.get(ext.generating)
    if got is None:
        base = ctx.base(ctx.mask_of(ext.generating))
        got = frozenset(
            ctx.ids[i] for i in range(ctx.n)
            if base.entails(ctx.prereq[i])
            and not any(base.entails(nb) for nb in ctx.neg_justs[i]))
        ctx.appl[ext.generating] = got
    return got


def compare(e1: Extension, e2: Extension, order: Sequence[str]) -> bool:
    """Is e1's applied vector lexicographically >= e2's along the order?

    Scans ids from most to least significant; decided by the first id
    applied in exactly one of the two extensions.
    """
    a1 = applied_ids(e1.theory, e1)
    a2 = applied_ids(e2.theory, e2)
    for id in order:
        x, y = id in a1, id in a2
        if x and not y:
            return True
        if y and not x:
            return False
    return True


def is_lex_ordering(thy: DefaultTheory, order: Sequence[str], ext: Extension,
                    bound: int = EXHAUSTIVE_BOUND) -> bool:
    """Does the total order make the extension lexicographically maximal?"""
    check_total_order(order, thy.ids)
    return all(compare(ext, other, order)
               for other in enumerate_extensions(thy, bound))


def is_lex_ordering_definitional(thy: DefaultTheory, order: Sequence[str],
                                 ext: Extension,
                                 bound: int = EXHAUSTIVE_BOUND) -> bool:
    """Literal reading of the ordering condition: whenever a rival applies a
    default the extension does not, some strictly more significant default
    is applied in the extension but not the rival.  Equivalent to
    is_lex_ordering; kept as an independent cross-check."""
    check_total_order(order, thy.ids)
    rank = {id: k for k, id in enumerate(order)}
    mine = applied_ids(thy, ext)
    for other in enumerate_extensions(thy, bound):
        theirs = applied_ids(thy, other)
        for d in theirs - mine:
            if not any(rank[e] < rank[d] for e in mine - theirs):
                return False
    return True


def _has_witness_order(mine: frozenset[str],
                       rivals: list[frozenset[str]],
                       priority: PriorityOrder,
                       budget: int) -> bool:
    """Is there a linear extension of the priorities under which `mine`
    beats every rival vector?

    A total order T works iff for every rival one "witness" win precedes
    all of that rival's losses under T.  Choosing a witness per rival and
    requiring the edges witness->loss to stay acyclic together with the
    priorities is equivalent: a T induces witnesses (the most significant
    differing default), and conversely any acyclic choice extends to a
    suitable T.  The goals are deduplicated, subsumption-reduced, split
    into independent components, and searched fail-first; per goal all
    fresh edges share their source, so a cycle can use at most one of them
    and they can be checked one at a time.
    """
    seen: set[tuple[frozenset[str], frozenset[str]]] = set()
    goals: list[tuple[frozenset[str], frozenset[str]]] = []
    for theirs in rivals:
        losses = theirs - mine
        if not losses:
            continue
        wins = mine - theirs
        if not wins:
            return False
        key = (wins, losses)
        if key not in seen:
            seen.add(key)
            goals.append(key)

    # A goal with fewer wins and more losses subsumes a weaker one.
    goals = [g for g in goals
             if not any(o is not g and o[0] <= g[0] and g[1] <= o[1]
                        for o in goals)]

    # A witness is statically viable only if no loss already outranks it.
    narrowed: list[tuple[list[str], frozenset[str]]] = []
    for wins, losses in goals:
        viable = [w for w in sorted(wins)
                  if not any(priority.higher(l, w) for l in losses)]
        if not viable:
            return False
        narrowed.append((viable, losses))

    # Independent components can be solved separately.
    def component(base: tuple[list[str], frozenset[str]],
                  pool: list[tuple[list[str], frozenset[str]]]):
        names = set(base[0]) | base[1]
        group = [base]
        rest = []
        changed = True
        while changed:
            changed = False
            nxt = []
            for g in pool:
                if names & (set(g[0]) | g[1]):
                    names |= set(g[0]) | g[1]
                    group.append(g)
                    changed = True
                else:
                    nxt.append(g)
            pool = nxt
        return group, pool

    adj_p: dict[str, set[str]] = {}
    for a, b in priority.pairs:
        adj_p.setdefault(a, set()).add(b)

    remaining = narrowed
    while remaining:
        group, remaining = component(remaining[0], remaining[1:])
        group.sort(key=lambda g: len(g[0]))
        edges: set[tuple[str, str]] = set()
        steps = budget

        def solve(k: int) -> bool:
            nonlocal steps
            steps -= 1
            if steps < 0:
                raise BoundExceededError("witness search exceeded its bound")
            if k == len(group):
                return True
            wins, losses = group[k]
            for w in wins:
                fresh = [(w, l) for l in losses if (w, l) not in edges]
                if any(digraph_reaches(adj_p, edges, l, w) for _, l in fresh):
                    continue
                edges.update(fresh)
                if solve(k + 1):
                    return True
                edges.difference_update(fresh)
            return False

        if not solve(0):
            return False
    return True


def lex_enumerate(thy: DefaultTheory, priority: PriorityOrder,
                  bound: int = EXHAUSTIVE_BOUND,
                  witness_bound: int = WITNESS_BOUND) -> list[Extension]:
    """All extensions maximal under some linear extension of the priorities."""
    exts = enumerate_extensions(thy, bound)
    vectors = {e.generating: applied_ids(thy, e) for e in exts}
    out = []
    for e in exts:
        rivals = [vectors[o.generating] for o in exts if o.generating != e.generating]
        if _has_witness_order(vectors[e.generating], rivals, priority, witness_bound):
            out.append(e)
    return out


def lex_enumerate_by_orders(thy: DefaultTheory, priority: PriorityOrder,
                            bound: int = EXHAUSTIVE_BOUND,
                            order_bound: int = 50_000) -> list[Extension]:
    """Definitional enumeration over explicit linear extensions (cross-check)."""
    from .theory import linear_extensions
    exts = enumerate_extensions(thy, bound)
    out = []
    for e in exts:
        found = False
        n = 0
        for order in linear_extensions(priority, thy.ids):
            n += 1
            if n > order_bound:
                raise BoundExceededError(
                    f"more than {order_bound} linear extensions")
            if all(compare(e, o, order) for o in exts):
                found = True
                break
        if found:
            out.append(e)
    return out


def lex_entails(thy: DefaultTheory, priority: PriorityOrder, phi: Formula,
                bound: int = EXHAUSTIVE_BOUND) -> bool:
    """phi lies in every lex-preferred extension (vacuously true if the
    theory has no extension)."""
    return all(e.contains(phi) for e in lex_enumerate(thy, priority, bound))


def lex_total_decide(thy: DefaultTheory, order: Sequence[str], phi: Formula,
                     bound: int = EXHAUSTIVE_BOUND) -> bool:
    """Greedy decision procedure for a total order.

    Walks the defaults from most to least significant, committing to each
    one iff some extension applies everything committed so far plus it;
    the committed set generates the unique preferred extension.  Returns
    True outright when the theory has no extension.
    """
    check_total_order(order, thy.ids)
    if not exists_extension_applying(thy, (), bound):
        return True
    committed: list[str] = []
    for id in order:
        if exists_extension_applying(thy, committed + [id], bound):
            committed.append(id)
    chosen = set(committed)
    basis = list(thy.objective) + [d.conclusion for d in thy.defaults
                                   if d.id in chosen]
    return entails(basis, phi)
