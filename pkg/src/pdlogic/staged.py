"""Staged-construction prioritized semantics (Brewka, Baader-Hollunder).

Both semantics grow a stage sequence E_0 = W, E_{i+1} = E_i + conclusions
of the defaults that currently qualify, where a default is held back while
a higher-priority default is active.  They differ in where justification
consistency is tested: Baader-Hollunder preferredness checks a candidate
extension, so justifications are tested against the full candidate;
Brewka's construction (normal theories, one total order at a time) tests
them against the stage being built.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BoundExceededError, NotNormalError
from .formulas import Formula, negate
from .solvers import Consequences, handle
from .theory import (DefaultTheory, Default, PriorityOrder, digraph_reaches,
                     linear_extensions)
from .reiter import (
    EXHAUSTIVE_BOUND,
    Extension,
    _ctx,
    _generating_mask,
    _mutually_entail,
    enumerate_extensions,
)

PATH_BOUND = 500_000


def is_active(d: Default, base: Iterable[Formula]) -> bool:
    """Prerequisite derivable, no justification refuted, conclusion not yet
    derived -- all relative to the given base."""
    h = handle(base)
    return (h.entails(d.prerequisite)
            and not any(h.entails(negate(b)) for b in d.justifications)
            and not h.entails(d.conclusion))


@dataclass(frozen=True, slots=True)
class StageTrace:
    """Stage snapshots (formula sets) and the ids applied at each step.

    The first snapshot is the objective part; the last two snapshots are
    equal (the fixpoint is recorded explicitly).
    """

    snapshots: tuple[frozenset[Formula], ...]
    applied: tuple[frozenset[str], ...]

    @property
    def final(self) -> frozenset[Formula]:
        return self.snapshots[-1]


def check_total_order(order: Sequence[str], ids: Iterable[str]) -> None:
    if list(sorted(order)) != sorted(ids) or len(set(order)) != len(order):
        raise ValueError("order must list every default id exactly once")


def _active_mask(ctx, base: Consequences) -> int:
    mask = 0
    for i in range(ctx.n):
        if (not base.entails(ctx.theory.defaults[i].conclusion)
                and base.entails(ctx.prereq[i])
                and not any(base.entails(nb) for nb in ctx.neg_justs[i])):
            mask |= 1 << i
    return mask


def _snapshot(ctx, mask: int) -> frozenset[Formula]:
    fs = set(ctx.theory.objective)
    for i in range(ctx.n):
        if mask >> i & 1:
            fs.add(ctx.theory.defaults[i].conclusion)
    return frozenset(fs)


def _staged_run(ctx, allowed: list[bool | None], outranked,
                want_trace: bool = True) -> tuple[int, StageTrace | None]:
    """Shared stage loop; `outranked(i, active_mask)` decides domination."""
    fired = 0
    snapshots = [_snapshot(ctx, 0)] if want_trace else None
    applied: list[frozenset[str]] = []
    while True:
        base = ctx.base(fired)
        active = _active_mask(ctx, base)
        step: set[str] = set()
        new = fired
        for i in range(ctx.n):
            ok = allowed[i]
            if ok is None:  # Brewka: test justifications against the stage
                ok = not any(base.entails(nb) for nb in ctx.neg_justs[i])
            if not ok:
                continue
            if not base.entails(ctx.prereq[i]):
                continue
            if outranked(i, active):
                continue
            if want_trace:
                step.add(ctx.ids[i])
            new |= 1 << i
        if want_trace:
            applied.append(frozenset(step))
            snapshots.append(_snapshot(ctx, new))
        if new == fired:
            trace = (StageTrace(tuple(snapshots), tuple(applied))
                     if want_trace else None)
            return fired, trace
        fired = new


def _bh_run(ctx, priority: PriorityOrder, cand: Consequences,
            want_trace: bool = True) -> tuple[int, StageTrace | None]:
    allowed = [not any(cand.entails(nb) for nb in ctx.neg_justs[i])
               for i in range(ctx.n)]
    ids = ctx.ids

    def outranked(i: int, active: int) -> bool:
        m = active
        while m:
            j = (m & -m).bit_length() - 1
            if priority.higher(ids[j], ids[i]):
                return True
            m &= m - 1
        return False

    return _staged_run(ctx, allowed, outranked, want_trace)


def bh_stages(thy: DefaultTheory, priority: PriorityOrder,
              candidate: Extension) -> StageTrace:
    """The stage sequence for a candidate extension, justifications tested
    against the candidate."""
    ctx = _ctx(thy)
    cand = ctx.base(ctx.mask_of(candidate.generating))
    return _bh_run(ctx, priority, cand)[1]


def bh_check(thy: DefaultTheory, priority: PriorityOrder,
             candidate: Extension) -> bool:
    """Does the staged construction reproduce the candidate extension?"""
    ctx = _ctx(thy)
    cand_mask = ctx.mask_of(candidate.generating)
    fired, _ = _bh_run(ctx, priority, ctx.base(cand_mask), want_trace=False)
    return _mutually_entail(ctx, fired, cand_mask)


def bh_enumerate(thy: DefaultTheory, priority: PriorityOrder,
                 bound: int = EXHAUSTIVE_BOUND) -> list[Extension]:
    return [e for e in enumerate_extensions(thy, bound)
            if bh_check(thy, priority, e)]


def bh_entails(thy: DefaultTheory, priority: PriorityOrder, phi: Formula,
               bound: int = EXHAUSTIVE_BOUND) -> bool:
    """phi lies in every BH-preferred extension (vacuously true if none)."""
    return all(e.contains(phi) for e in bh_enumerate(thy, priority, bound))


# ---------------------------------------------------------------------------
# Brewka's construction

def _require_normal(thy: DefaultTheory) -> None:
    for d in thy.defaults:
        if not d.normal:
            raise NotNormalError(f"default {d.id!r} is not normal")


def _brewka_run(ctx, rank: dict[str, int],
                want_trace: bool = True) -> tuple[int, StageTrace | None]:
    ids = ctx.ids

    def outranked(i: int, active: int) -> bool:
        mine = rank[ids[i]]
        m = active
        while m:
            j = (m & -m).bit_length() - 1
            if rank[ids[j]] < mine:
                return True
            m &= m - 1
        return False

    return _staged_run(ctx, [None] * ctx.n, outranked, want_trace)


def brewka_stages(thy: DefaultTheory, order: Sequence[str]) -> StageTrace:
    """Stage sequence for one total order (ids from highest to lowest);
    justifications tested against the stage under construction."""
    _require_normal(thy)
    check_total_order(order, thy.ids)
    ctx = _ctx(thy)
    return _brewka_run(ctx, {id: k for k, id in enumerate(order)})[1]


def brewka_construct(thy: DefaultTheory, order: Sequence[str]) -> Extension:
    """The extension generated by one total order."""
    _require_normal(thy)
    check_total_order(order, thy.ids)
    ctx = _ctx(thy)
    fired, _ = _brewka_run(ctx, {id: k for k, id in enumerate(order)},
                           want_trace=False)
    return ctx.extension_of(_generating_mask(ctx, fired))


def brewka_enumerate_by_orders(thy: DefaultTheory, priority: PriorityOrder,
                               order_bound: int = 50_000) -> list[Extension]:
    """Definitional enumeration: one construction per linear extension."""
    _require_normal(thy)
    out: dict[frozenset[str], Extension] = {}
    n = 0
    for order in linear_extensions(priority, thy.ids):
        n += 1
        if n > order_bound:
            raise BoundExceededError(
                f"more than {order_bound} linear extensions")
        e = brewka_construct(thy, order)
        out.setdefault(e.generating, e)
    return sorted(out.values(), key=Extension.sort_key)


def brewka_enumerate(thy: DefaultTheory, priority: PriorityOrder,
                     path_bound: int = PATH_BOUND) -> list[Extension]:
    """All extensions generated by some linear extension of the priorities.

    Iterating linear extensions is factorial, so the search instead
    branches on which active default the order puts on top at each stage
    and carries the ordering constraints that choice imposes; a branch
    survives iff its constraints stay acyclic together with the given
    priorities.  Conclusions that are already entailed are added eagerly,
    which never changes the closure and keeps states canonical.
    """
    _require_normal(thy)
    ctx = _ctx(thy)
    adj_p: dict[str, set[str]] = {}
    for a, b in priority.pairs:
        adj_p.setdefault(a, set()).add(b)

    out: dict[frozenset[str], Extension] = {}
    steps = 0

    def grow(fired: int, edges: set[tuple[str, str]]) -> None:
        nonlocal steps
        while True:
            steps += 1
            if steps > path_bound:
                raise BoundExceededError(f"search exceeded {path_bound} steps")
            base = ctx.base(fired)
            qualifying = [i for i in range(ctx.n)
                          if base.entails(ctx.prereq[i])
                          and not any(base.entails(nb) for nb in ctx.neg_justs[i])]
            active = [i for i in qualifying
                      if not base.entails(ctx.theory.defaults[i].conclusion)]
            if not active:
                new = fired
                for i in qualifying:
                    new |= 1 << i
                if new == fired:
                    ext = ctx.extension_of(_generating_mask(ctx, fired))
                    out.setdefault(ext.generating, ext)
                    return
                fired = new
                continue
            silent = fired
            for i in qualifying:
                if i not in active:
                    silent |= 1 << i
            for x in active:
                # x goes on top of the other actives; any cycle through one
                # fresh edge would have to avoid the others (they share the
                # source x), so checking each edge separately is complete.
                wanted = [(ctx.ids[x], ctx.ids[a]) for a in active if a != x]
                fresh = [e for e in wanted if e not in edges]
                if any(digraph_reaches(adj_p, edges, b, a) for a, b in fresh):
                    continue
                edges.update(fresh)
                grow(silent | 1 << x, edges)
                edges.difference_update(fresh)
            return

    grow(0, set())
    return sorted(out.values(), key=Extension.sort_key)


def brewka_entails(thy: DefaultTheory, priority: PriorityOrder, phi: Formula,
                   path_bound: int = PATH_BOUND) -> bool:
    """phi lies in every Brewka-preferred extension."""
    return all(e.contains(phi)
               for e in brewka_enumerate(thy, priority, path_bound))
