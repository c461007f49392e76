"""Default theories, priority orders, and the theory file format.

File format (UTF-8, line oriented, ``#`` starts a comment):

    W: <formula>                                # repeatable
    D: <id>: <alpha> : <beta1>, <beta2> / <gamma>
    P: <id> > <id>                              # left has higher priority

An empty justification list is written ``: /``; a prerequisite-free default
is written with ``true`` as its prerequisite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import (
    DuplicateDefaultError,
    PriorityCycleError,
    TheorySyntaxError,
    UnknownDefaultError,
)
from .formulas import TRUE, Formula, format_formula, parse_formula


@dataclass(frozen=True, slots=True)
class Default:
    """A default rule: conclude `conclusion` once `prerequisite` is derived,
    unless some justification is refuted."""

    id: str
    prerequisite: Formula
    justifications: tuple[Formula, ...]
    conclusion: Formula

    def __str__(self) -> str:
        beta = ", ".join(format_formula(b) for b in self.justifications)
        return (f"{self.id}: {format_formula(self.prerequisite)} : "
                f"{beta} / {format_formula(self.conclusion)}")

    @property
    def prerequisite_free(self) -> bool:
        return self.prerequisite == TRUE

    @property
    def normal(self) -> bool:
        return len(self.justifications) == 1 and self.justifications[0] == self.conclusion


def default(id: str, prerequisite: Formula, justifications: Iterable[Formula],
            conclusion: Formula) -> Default:
    return Default(id, prerequisite, tuple(justifications), conclusion)


def normal_default(id: str, prerequisite: Formula, conclusion: Formula) -> Default:
    return Default(id, prerequisite, (conclusion,), conclusion)


def free_normal_default(id: str, conclusion: Formula) -> Default:
    return Default(id, TRUE, (conclusion,), conclusion)


@dataclass(frozen=True, slots=True)
class DefaultTheory:
    defaults: tuple[Default, ...]
    objective: tuple[Formula, ...]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for d in self.defaults:
            if d.id in seen:
                raise DuplicateDefaultError(f"duplicate default id {d.id!r}")
            seen.add(d.id)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(d.id for d in self.defaults)

    def by_id(self, id: str) -> Default:
        for d in self.defaults:
            if d.id == id:
                return d
        raise UnknownDefaultError(f"unknown default id {id!r}")

    @property
    def is_normal(self) -> bool:
        return all(d.normal for d in self.defaults)

    def __str__(self) -> str:
        return serialize_theory(self, PriorityOrder.empty())


def theory(defaults: Iterable[Default], objective: Iterable[Formula]) -> DefaultTheory:
    return DefaultTheory(tuple(defaults), tuple(objective))


# ---------------------------------------------------------------------------
# priorities

def _transitive_closure(pairs: Iterable[tuple[str, str]]) -> set[tuple[str, str]]:
    succ: dict[str, set[str]] = {}
    for a, b in pairs:
        succ.setdefault(a, set()).add(b)
    closed: set[tuple[str, str]] = set()
    for a in list(succ):
        # DFS from a collects everything strictly below it.
        stack = list(succ.get(a, ()))
        seen: set[str] = set()
        while stack:
            b = stack.pop()
            if b in seen:
                continue
            seen.add(b)
            closed.add((a, b))
            stack.extend(succ.get(b, ()))
    return closed


@dataclass(frozen=True, slots=True)
class PriorityOrder:
    """A strict partial order on default ids; (a, b) means a has higher
    priority.  Stored transitively closed."""

    pairs: frozenset[tuple[str, str]] = field(default_factory=frozenset)

    @staticmethod
    def empty() -> "PriorityOrder":
        return PriorityOrder(frozenset())

    @staticmethod
    def of(pairs: Iterable[tuple[str, str]],
           ids: Iterable[str] | None = None) -> "PriorityOrder":
        """Transitive closure of the pairs, validated as a strict partial order."""
        pairs = list(pairs)
        if ids is not None:
            known = set(ids)
            for a, b in pairs:
                for x in (a, b):
                    if x not in known:
                        raise UnknownDefaultError(f"priority names unknown default {x!r}")
        closed = _transitive_closure(pairs)
        for a, b in closed:
            if a == b or (b, a) in closed:
                raise PriorityCycleError(_witness_cycle(pairs, a))
        return PriorityOrder(frozenset(closed))

    @staticmethod
    def total(sequence: Sequence[str]) -> "PriorityOrder":
        """The total order listing ids from highest to lowest priority."""
        seq = list(sequence)
        return PriorityOrder(frozenset(
            (seq[i], seq[j]) for i in range(len(seq)) for j in range(i + 1, len(seq))))

    def higher(self, a: str, b: str) -> bool:
        return (a, b) in self.pairs

    def is_total(self, ids: Iterable[str]) -> bool:
        ids = list(ids)
        return all(self.higher(a, b) or self.higher(b, a)
                   for i, a in enumerate(ids) for b in ids[i + 1:])

    def sequence(self, ids: Iterable[str]) -> tuple[str, ...]:
        """The ids from highest to lowest priority; requires a total order."""
        ids = list(ids)
        if not self.is_total(ids):
            raise ValueError("priority order is not total on the given ids")
        return tuple(sorted(ids, key=lambda a: sum(1 for b in ids if self.higher(a, b)),
                            reverse=True))

    def restricted_to(self, ids: Iterable[str]) -> "PriorityOrder":
        keep = set(ids)
        return PriorityOrder(frozenset(p for p in self.pairs
                                       if p[0] in keep and p[1] in keep))

    def extends(self, other: "PriorityOrder") -> bool:
        return other.pairs <= self.pairs

    def reduction(self) -> list[tuple[str, str]]:
        """Minimal pair list whose closure is this order (for serialization)."""
        out = []
        for a, b in sorted(self.pairs):
            if not any((a, c) in self.pairs and (c, b) in self.pairs
                       for c in {x for x, _ in self.pairs} | {y for _, y in self.pairs}):
                out.append((a, b))
        return out


def _witness_cycle(pairs: list[tuple[str, str]], start: str) -> list[str]:
    """Some cycle through `start` in the raw pair digraph (BFS with parents)."""
    succ: dict[str, list[str]] = {}
    for a, b in pairs:
        succ.setdefault(a, []).append(b)
    parent: dict[str, str] = {}
    queue = [start]
    seen = {start}
    while queue:
        node = queue.pop(0)
        for nxt in succ.get(node, ()):
            if nxt == start:
                path = [node]
                while path[-1] != start and path[-1] in parent:
                    path.append(parent[path[-1]])
                path.reverse()
                return path + [start]
            if nxt not in seen:
                seen.add(nxt)
                parent[nxt] = node
                queue.append(nxt)
    return [start, start]


def validate_priority(pairs: Iterable[tuple[str, str]],
                      theory: DefaultTheory) -> PriorityOrder:
    return PriorityOrder.of(pairs, theory.ids)


def digraph_reaches(adj: dict[str, set[str]], extra: Iterable[tuple[str, str]],
                    src: str, dst: str) -> bool:
    """Reachability in the union of an adjacency map and extra edges."""
    extra_adj: dict[str, list[str]] = {}
    for a, b in extra:
        extra_adj.setdefault(a, []).append(b)
    stack = [src]
    seen = {src}
    while stack:
        v = stack.pop()
        if v == dst:
            return True
        for w in adj.get(v, ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
        for w in extra_adj.get(v, ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def linear_extensions(priority: PriorityOrder,
                      ids: Iterable[str]) -> Iterator[tuple[str, ...]]:
    """Every strict total order extending the priority order, exactly once.

    Orders are emitted as id sequences (highest priority first) in
    lexicographic order of the sequences.
    """
    ids = sorted(set(ids))
    above: dict[str, set[str]] = {i: set() for i in ids}
    for a, b in priority.pairs:
        if a in above and b in above:
            above[b].add(a)  # b cannot be placed while a is unplaced

    prefix: list[str] = []
    placed: set[str] = set()

    def rec() -> Iterator[tuple[str, ...]]:
        if len(prefix) == len(ids):
            yield tuple(prefix)
            return
        for i in ids:
            if i in placed or not above[i] <= placed:
                continue
            placed.add(i)
            prefix.append(i)
            yield from rec()
            prefix.pop()
            placed.discard(i)

    return rec()


def count_linear_extensions(priority: PriorityOrder, ids: Iterable[str],
                            limit: int) -> int:
    """Number of linear extensions, stopping early once `limit` is reached."""
    n = 0
    for _ in linear_extensions(priority, ids):
        n += 1
        if n >= limit:
            return n
    return n


# ---------------------------------------------------------------------------
# file format

def parse_theory(text: str) -> tuple[DefaultTheory, PriorityOrder]:
    objective: list[Formula] = []
    defaults: list[Default] = []
    raw_pairs: list[tuple[str, str]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, body = line.partition(":")
        head = head.strip()
        if not _:
            raise TheorySyntaxError(f"expected 'W:', 'D:' or 'P:' line", lineno)
        if head == "W":
            objective.append(parse_formula(body, lineno))
        elif head == "D":
            defaults.append(_parse_default(body, lineno))
        elif head == "P":
            left, sep, right = body.partition(">")
            if not sep:
                raise TheorySyntaxError("expected '<id> > <id>'", lineno)
            a, b = left.strip(), right.strip()
            if not a or not b:
                raise TheorySyntaxError("expected '<id> > <id>'", lineno)
            raw_pairs.append((a, b))
        else:
            raise TheorySyntaxError(f"unknown section {head!r}", lineno)

    thy = DefaultTheory(tuple(defaults), tuple(objective))
    return thy, validate_priority(raw_pairs, thy)


def _parse_default(body: str, lineno: int) -> Default:
    id_part, sep, rest = body.partition(":")
    if not sep:
        raise TheorySyntaxError("expected '<id>: <alpha> : <betas> / <gamma>'", lineno)
    id = id_part.strip()
    if not id:
        raise TheorySyntaxError("empty default id", lineno)
    alpha_part, sep, rest = rest.partition(":")
    if not sep:
        raise TheorySyntaxError("expected ':' between prerequisite and justifications",
                                lineno)
    beta_part, sep, gamma_part = rest.rpartition("/")
    if not sep:
        raise TheorySyntaxError("expected '/' before the conclusion", lineno)
    alpha = parse_formula(alpha_part, lineno)
    betas = tuple(parse_formula(b, lineno)
                  for b in beta_part.split(",") if b.strip())
    gamma = parse_formula(gamma_part, lineno)
    return Default(id, alpha, betas, gamma)


def serialize_theory(thy: DefaultTheory, priority: PriorityOrder | None = None) -> str:
    lines = [f"W: {format_formula(f)}" for f in thy.objective]
    for d in thy.defaults:
        beta = ", ".join(format_formula(b) for b in d.justifications)
        lines.append(f"D: {d.id}: {format_formula(d.prerequisite)} : {beta} "
                     f"/ {format_formula(d.conclusion)}")
    if priority is not None:
        for a, b in priority.reduction():
            lines.append(f"P: {a} > {b}")
    return "\n".join(lines) + "\n"
