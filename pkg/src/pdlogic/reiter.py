"""Reiter extensions: recognition, enumeration, and the two consequence modes.

Extensions are represented by their generating-default sets; the finite
basis W + conclusions(generating) stands in for the (infinite) deductive
closure, and every membership question is an entailment test against it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .errors import BoundExceededError
from .formulas import Formula, negate
from .solvers import Consequences, entails, handle, is_consistent
from .theory import Default, DefaultTheory

EXHAUSTIVE_BOUND = 20
STATE_BOUND = 500_000


@dataclass(frozen=True, slots=True)
class Extension:
    """An extension, identified by its generating-default ids.

    Two extensions are equal iff their generating sets are equal; the
    originating theory and the cached basis do not take part in equality.
    """

    generating: frozenset[str]
    basis: tuple[Formula, ...] = field(compare=False)
    theory: DefaultTheory = field(compare=False, repr=False)

    def contains(self, phi: Formula) -> bool:
        return entails(self.basis, phi)

    def is_consistent(self) -> bool:
        return is_consistent(self.basis)

    def sort_key(self) -> tuple[str, ...]:
        return tuple(sorted(self.generating))


def make_extension(thy: DefaultTheory, generating: Iterable[str]) -> Extension:
    gen = frozenset(generating)
    basis = tuple(thy.objective) + tuple(d.conclusion for d in thy.defaults
                                         if d.id in gen)
    return Extension(gen, basis, thy)


class _Ctx:
    """Per-theory workspace: indexed defaults and memoised basis handles.

    A basis is addressed by the bitmask of default indices whose conclusions
    join the objective part.  All cached structures only grow, so a context
    may be shared by concurrent read-only computations.
    """

    __slots__ = ("theory", "n", "ids", "prereq", "neg_justs", "neg_concl",
                 "_bases", "extensions", "w_consistent", "appl")

    def __init__(self, thy: DefaultTheory):
        self.theory = thy
        self.n = len(thy.defaults)
        self.ids = [d.id for d in thy.defaults]
        self.prereq = [d.prerequisite for d in thy.defaults]
        self.neg_justs = [tuple(negate(b) for b in d.justifications)
                          for d in thy.defaults]
        self.neg_concl = [negate(d.conclusion) for d in thy.defaults]
        self._bases: dict[int, Consequences] = {}
        self.extensions: list[Extension] | None = None
        self.w_consistent = is_consistent(thy.objective)
        self.appl: dict[frozenset[str], frozenset[str]] = {}

    def base(self, mask: int) -> Consequences:
        got = self._bases.get(mask)
        if got is None:
            formulas = list(self.theory.objective)
            defaults = self.theory.defaults
            m = mask
            while m:
                i = (m & -m).bit_length() - 1
                formulas.append(defaults[i].conclusion)
                m &= m - 1
            got = Consequences(formulas)
            self._bases[mask] = got
        return got

    def extension_of(self, mask: int) -> Extension:
        return make_extension(self.theory,
                              (self.ids[i] for i in range(self.n) if mask >> i & 1))

    def mask_of(self, ids: Iterable[str]) -> int:
        want = set(ids)
        mask = 0
        for i, name in enumerate(self.ids):
            if name in want:
                mask |= 1 << i
        return mask


@lru_cache(maxsize=4096)
def _ctx(thy: DefaultTheory) -> _Ctx:
    return _Ctx(thy)


def _blocked(ctx: _Ctx, candidate: Consequences, i: int) -> bool:
    return any(candidate.entails(nb) for nb in ctx.neg_justs[i])


def _saturate(ctx: _Ctx, candidate: Consequences) -> int:
    """Mask of defaults fired by the recognition saturation against `candidate`."""
    fired = 0
    allowed = [not _blocked(ctx, candidate, i) for i in range(ctx.n)]
    changed = True
    while changed:
        changed = False
        base = ctx.base(fired)
        for i in range(ctx.n):
            if fired >> i & 1 or not allowed[i]:
                continue
            if base.entails(ctx.prereq[i]):
                fired |= 1 << i
                base = ctx.base(fired)
                changed = True
    return fired


def _mutually_entail(ctx: _Ctx, a: int, b: int) -> bool:
    if a == b:
        return True
    base_a, base_b = ctx.base(a), ctx.base(b)
    concl = [d.conclusion for d in ctx.theory.defaults]
    return (all(base_a.entails(concl[i]) for i in range(ctx.n) if b >> i & 1 and not a >> i & 1)
            and all(base_b.entails(concl[i]) for i in range(ctx.n) if a >> i & 1 and not b >> i & 1))


def _is_extension_mask(ctx: _Ctx, cand_mask: int) -> bool:
    return _mutually_entail(ctx, _saturate(ctx, ctx.base(cand_mask)), cand_mask)


def is_extension(thy: DefaultTheory, candidate_basis: Iterable[Formula]) -> bool:
    """Recognition by saturation: grow W with every conclusion whose
    prerequisite is derivable and whose justifications the candidate does
    not refute, then test that the result and the candidate entail each
    other."""
    candidate = Consequences(candidate_basis)
    grown: list[Formula] = list(thy.objective)
    done: set[int] = set()
    changed = True
    while changed:
        changed = False
        base = Consequences(grown)
        for i, d in enumerate(thy.defaults):
            if i in done:
                continue
            if any(candidate.entails(negate(b)) for b in d.justifications):
                continue
            if base.entails(d.prerequisite):
                grown.append(d.conclusion)
                done.add(i)
                changed = True
    base = Consequences(grown)
    cand_formulas = list(candidate_basis)
    return (all(candidate.entails(f) for f in grown)
            and all(base.entails(f) for f in cand_formulas))


def generating_defaults(thy: DefaultTheory, basis: Iterable[Formula]) -> frozenset[str]:
    """Defaults whose prerequisite the basis entails and none of whose
    justifications it refutes."""
    handle = Consequences(basis)
    out = []
    for d in thy.defaults:
        if handle.entails(d.prerequisite) and not any(
                handle.entails(negate(b)) for b in d.justifications):
            out.append(d.id)
    return frozenset(out)


def _generating_mask(ctx: _Ctx, basis_mask: int) -> int:
    handle = ctx.base(basis_mask)
    mask = 0
    for i in range(ctx.n):
        if handle.entails(ctx.prereq[i]) and not _blocked(ctx, handle, i):
            mask |= 1 << i
    return mask


def _enumerate_subsets(ctx: _Ctx) -> list[int]:
    found: set[int] = set()
    for k in range(ctx.n + 1):
        for combo in combinations(range(ctx.n), k):
            cand = 0
            for i in combo:
                cand |= 1 << i
            if _is_extension_mask(ctx, cand):
                found.add(_generating_mask(ctx, cand))
    return sorted(found)


def _enumerate_normal(ctx: _Ctx, max_states: int) -> list[int]:
    """Applied-set search for normal theories.

    Maximal chains of applications are exactly the extensions of a normal
    theory, so a depth-first walk over applied-default sets (merged across
    orderings) is complete; it avoids the 2^|D| candidate sweep.
    """
    leaves: set[int] = set()
    visited: set[int] = {0}
    stack = [0]
    while stack:
        mask = stack.pop()
        base = ctx.base(mask)
        applicable = [i for i in range(ctx.n)
                      if not mask >> i & 1
                      and not base.entails(ctx.neg_concl[i])
                      and base.entails(ctx.prereq[i])]
        if not applicable:
            leaves.add(mask)
            continue
        for i in applicable:
            nxt = mask | 1 << i
            if nxt not in visited:
                if len(visited) >= max_states:
                    raise BoundExceededError(
                        f"normal-theory search exceeded {max_states} states")
                visited.add(nxt)
                stack.append(nxt)
    return sorted(leaves)


def enumerate_extensions(thy: DefaultTheory, bound: int = EXHAUSTIVE_BOUND,
                         max_states: int = STATE_BOUND) -> list[Extension]:
    """All extensions, deduplicated by generating set and sorted by it.

    Normal theories are searched over applied-default sets; anything else
    falls back to the exhaustive sweep over conclusion subsets, whose size
    the `bound` caps.
    """
    ctx = _ctx(thy)
    if ctx.extensions is not None:
        return list(ctx.extensions)
    if not ctx.w_consistent:
        # The single inconsistent extension: only justification-free
        # defaults survive, and the objective part already carries Cn = L.
        gen = frozenset(d.id for d in thy.defaults if not d.justifications)
        result = [Extension(gen, tuple(thy.objective), thy)]
    elif thy.is_normal:
        masks = _enumerate_normal(ctx, max_states)
        result = [ctx.extension_of(m) for m in masks]
    else:
        if ctx.n > bound:
            raise BoundExceededError(
                f"{ctx.n} defaults exceed the exhaustive bound {bound}")
        masks = _enumerate_subsets(ctx)
        result = [ctx.extension_of(m) for m in masks]
    result.sort(key=Extension.sort_key)
    ctx.extensions = result
    return list(result)


def entails_cautious(thy: DefaultTheory, phi: Formula,
                     bound: int = EXHAUSTIVE_BOUND) -> bool:
    """phi belongs to every extension; vacuously true without extensions."""
    return all(e.contains(phi) for e in enumerate_extensions(thy, bound))


def entails_brave(thy: DefaultTheory, phi: Formula,
                  bound: int = EXHAUSTIVE_BOUND) -> bool:
    """phi belongs to at least one extension."""
    return any(e.contains(phi) for e in enumerate_extensions(thy, bound))


def applies(d: Default, ext: Extension) -> bool:
    """The extension derives the prerequisite and refutes no justification."""
    h = handle(ext.basis)
    return h.entails(d.prerequisite) and not any(
        h.entails(negate(b)) for b in d.justifications)


def exists_extension_applying(thy: DefaultTheory, ids: Iterable[str],
                              bound: int = EXHAUSTIVE_BOUND) -> bool:
    """True iff some extension applies every named default."""
    wanted = [thy.by_id(i) for i in ids]
    for ext in enumerate_extensions(thy, bound):
        h = handle(ext.basis)
        if all(h.entails(d.prerequisite) and not any(
                h.entails(negate(b)) for b in d.justifications)
               for d in wanted):
            return True
    return False
