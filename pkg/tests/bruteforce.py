"""Definition-level oracles for cross-checking the engines.

Everything here goes through truth tables and literal subset sweeps only;
no solver or engine code is reused, so agreement is meaningful.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable

from pdlogic.formulas import Formula, evaluate, free_variables, negate
from pdlogic.theory import Default, DefaultTheory


def models(formulas: Iterable[Formula], extra: Iterable[Formula] = ()):
    names = set()
    for f in list(formulas) + list(extra):
        names |= free_variables(f)
    names = sorted(names)
    for bits in product((False, True), repeat=len(names)):
        yield dict(zip(names, bits))


def tt_entails(base: Iterable[Formula], query: Formula) -> bool:
    base = list(base)
    for m in models(base, [query]):
        if all(evaluate(f, m) for f in base) and not evaluate(query, m):
            return False
    return True


def tt_consistent(base: Iterable[Formula]) -> bool:
    base = list(base)
    return any(all(evaluate(f, m) for f in base) for m in models(base))


def tt_applied(d: Default, basis: Iterable[Formula]) -> bool:
    basis = list(basis)
    return tt_entails(basis, d.prerequisite) and not any(
        tt_entails(basis, negate(b)) for b in d.justifications)


def tt_generating(thy: DefaultTheory, basis: Iterable[Formula]) -> frozenset[str]:
    return frozenset(d.id for d in thy.defaults if tt_applied(d, basis))


def tt_is_extension(thy: DefaultTheory, candidate: list[Formula]) -> bool:
    grown = list(thy.objective)
    remaining = list(thy.defaults)
    changed = True
    while changed:
        changed = False
        for d in list(remaining):
            if any(tt_entails(candidate, negate(b)) for b in d.justifications):
                continue
            if tt_entails(grown, d.prerequisite):
                grown.append(d.conclusion)
                remaining.remove(d)
                changed = True
    return (all(tt_entails(candidate, f) for f in grown)
            and all(tt_entails(grown, f) for f in candidate))


def tt_extensions(thy: DefaultTheory) -> set[frozenset[str]]:
    """Generating sets of all extensions, by sweeping conclusion subsets."""
    found: set[frozenset[str]] = set()
    n = len(thy.defaults)
    for bits in range(1 << n):
        candidate = list(thy.objective) + [
            thy.defaults[i].conclusion for i in range(n) if bits >> i & 1]
        if tt_is_extension(thy, candidate):
            found.add(tt_generating(thy, candidate))
    return found
