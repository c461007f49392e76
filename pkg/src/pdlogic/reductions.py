"""Compilers from SAT and two-level QBF instances to prioritized default
theories, with independent brute-force oracles for cross-validation.

Each generator realizes one hardness construction: the satisfiability of
the source instance is equivalent to a consequence question about the
generated theory, with the reserved marker atom ``false`` recording that a
clause went unsatisfied.  Fresh variables carry a double-underscore prefix
and source variables are required not to use it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .errors import BoundExceededError, PdlError, UnsatisfiableQbfError
from .formulas import (
    FALSE,
    TRUE,
    And,
    Formula,
    Imp,
    Literal,
    Not,
    Var,
    conj,
    evaluate,
    free_variables,
    lit,
)
from .theory import Default, DefaultTheory, PriorityOrder, free_normal_default, normal_default

FRESH_PREFIX = "__"
SAT_ORACLE_BOUND = 20
QBF_ORACLE_BOUND = 12


@dataclass(frozen=True, slots=True)
class CnfInstance:
    """A set of clauses over named variables."""

    clauses: tuple[frozenset[Literal], ...]

    def __post_init__(self) -> None:
        for c in self.clauses:
            if not c:
                raise PdlError("empty clause in CNF instance")
        for v in self.variables:
            if v.startswith(FRESH_PREFIX):
                raise PdlError(f"variable {v!r} collides with fresh-name prefix")

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(sorted({l.name for c in self.clauses for l in c}))

    @staticmethod
    def of(clauses: Iterable[Iterable[tuple[str, bool] | Literal]]) -> "CnfInstance":
        return CnfInstance(tuple(frozenset(Literal(*l) if not isinstance(l, Literal) else l
                                           for l in c) for c in clauses))

    @staticmethod
    def from_dimacs(text: str) -> "CnfInstance":
        clauses: list[frozenset[Literal]] = []
        current: list[Literal] = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith(("c", "p", "%")):
                continue
            for tok in line.split():
                n = int(tok)
                if n == 0:
                    if current:
                        clauses.append(frozenset(current))
                        current = []
                else:
                    current.append(Literal(f"x{abs(n)}", n > 0))
        if current:
            clauses.append(frozenset(current))
        return CnfInstance(tuple(clauses))


@dataclass(frozen=True, slots=True)
class QbfInstance:
    """Matrix of an exists-forall formula over x1_1..x1_n and x2_1..x2_n."""

    n: int
    matrix: Formula

    def __post_init__(self) -> None:
        allowed = {f"x{b}_{i}" for b in (1, 2) for i in range(1, self.n + 1)}
        extra = free_variables(self.matrix) - allowed
        if extra:
            raise PdlError(f"matrix uses variables outside both blocks: {sorted(extra)}")

    def outer(self, i: int) -> str:
        return f"x1_{i}"


class FreshNamer:
    """Injective supply of fresh variables for one reduction instance."""

    def __init__(self, instance: CnfInstance):
        self.instance = instance

    def clause_var(self, i: int) -> str:
        return f"{FRESH_PREFIX}n{i + 1}"

    def clause_var2(self, i: int) -> str:
        return f"{FRESH_PREFIX}n{i + 1}p"

    def prime(self, p: str) -> str:
        return f"{FRESH_PREFIX}p1_{p}"

    def prime2(self, p: str) -> str:
        return f"{FRESH_PREFIX}p2_{p}"


# ---------------------------------------------------------------------------
# oracles

def sat_oracle(c: CnfInstance, bound: int = SAT_ORACLE_BOUND) -> bool:
    """Exhaustive model search; the independent side of every round-trip."""
    names = c.variables
    if len(names) > bound:
        raise BoundExceededError(f"{len(names)} variables exceed the bound {bound}")
    for bits in product((False, True), repeat=len(names)):
        model = dict(zip(names, bits))
        if all(any(model[l.name] == l.positive for l in clause)
               for clause in c.clauses):
            return True
    return False


def _holds_for_all_inner(q: QbfInstance, outer_bits: Sequence[int]) -> bool:
    model = {q.outer(i + 1): bool(b) for i, b in enumerate(outer_bits)}
    for inner in product((False, True), repeat=q.n):
        model.update({f"x2_{i + 1}": v for i, v in enumerate(inner)})
        if not evaluate(q.matrix, model):
            return False
    return True


def max_2qbf_oracle(q: QbfInstance,
                    bound: int = QBF_ORACLE_BOUND) -> tuple[int, ...] | None:
    """Lexicographically maximal outer assignment whose every inner
    completion satisfies the matrix, by descending enumeration; None when
    no outer assignment works."""
    if q.n > bound:
        raise BoundExceededError(f"block size {q.n} exceeds the bound {bound}")
    for k in range((1 << q.n) - 1, -1, -1):
        outer = tuple((k >> (q.n - 1 - i)) & 1 for i in range(q.n))
        if _holds_for_all_inner(q, outer):
            return outer
    return None


# ---------------------------------------------------------------------------
# cautious-reasoning reductions (unprioritized)

def gen_cautious_horn(c: CnfInstance) -> DefaultTheory:
    """Positive prerequisite-free normal unary defaults over a two-literal
    Horn objective part; the marker is avoidable iff the CNF is satisfiable."""
    fresh = FreshNamer(c)
    defaults: list[Default] = []
    facts: list[Formula] = []
    for p in c.variables:
        p1, p2 = Var(fresh.prime(p)), Var(fresh.prime2(p))
        defaults.append(free_normal_default(f"d_{fresh.prime(p)}", p1))
        defaults.append(free_normal_default(f"d_{fresh.prime2(p)}", p2))
        facts.append(Imp(p1, Var(p)))
        facts.append(Imp(p2, Not(Var(p))))
    for i, clause in enumerate(c.clauses):
        n = Var(fresh.clause_var(i))
        defaults.append(free_normal_default(f"d_{fresh.clause_var(i)}", n))
        for l in sorted(clause):
            facts.append(Imp(l.formula(), Not(n)))
        facts.append(Imp(n, FALSE))
    return DefaultTheory(tuple(defaults), tuple(facts))


def gen_cautious_pfn(c: CnfInstance) -> DefaultTheory:
    """Prerequisite-free normal defaults with conjunctive conclusions and an
    empty objective part."""
    fresh = FreshNamer(c)
    defaults: list[Default] = []
    for i, clause in enumerate(c.clauses):
        n = Var(fresh.clause_var(i))
        for l in sorted(clause):
            defaults.append(free_normal_default(
                f"d{i + 1}_{'' if l.positive else 'not_'}{l.name}",
                And(l.formula(), n)))
        defaults.append(free_normal_default(
            f"d{i + 1}_block", And(Not(n), FALSE)))
    return DefaultTheory(tuple(defaults), ())


def gen_cautious_pfou(c: CnfInstance) -> DefaultTheory:
    """Prerequisite-free ordered unary defaults with an empty objective part;
    output passes the orderedness check by construction."""
    fresh = FreshNamer(c)
    defaults: list[Default] = []
    for p in c.variables:
        v, v1 = Var(p), Var(fresh.prime(p))
        defaults.append(free_normal_default(f"d_pos_{p}", v))
        defaults.append(free_normal_default(f"d_neg_{p}", Not(v)))
        defaults.append(Default(f"d_prime_{p}", TRUE,
                                (And(v1, Not(v)),), v1))
    for i, clause in enumerate(c.clauses):
        n = Var(fresh.clause_var(i))
        for l in sorted(clause):
            if l.positive:
                guard = Not(Var(fresh.prime(l.name)))
                tag = l.name
            else:
                guard = Not(Var(l.name))
                tag = f"not_{l.name}"
            defaults.append(Default(f"d{i + 1}_{tag}", TRUE,
                                    (And(n, guard),), n))
        defaults.append(Default(f"d{i + 1}_block", TRUE,
                                (And(FALSE, Not(n)),), FALSE))
    return DefaultTheory(tuple(defaults), ())


# ---------------------------------------------------------------------------
# prioritized reductions

def _normal_unary_construction(
        c: CnfInstance,
        pin_middle_layer: bool) -> tuple[DefaultTheory, PriorityOrder]:
    fresh = FreshNamer(c)
    layer1: list[Default] = []
    layer2: list[Default] = []
    layer3: list[Default] = []
    pairs: list[tuple[str, str]] = []

    for p in c.variables:
        layer1.append(free_normal_default(f"d_pos_{p}", Var(p)))
        layer1.append(free_normal_default(f"d_neg_{p}", Not(Var(p))))
        v1 = Var(fresh.prime(p))
        layer2.append(free_normal_default(f"d_prime_{p}", v1))
        layer2.append(normal_default(f"d_unprime_{p}", Var(p), Not(v1)))
        pairs.append((f"d_unprime_{p}", f"d_prime_{p}"))

    for i, clause in enumerate(c.clauses):
        n = Var(fresh.clause_var(i))
        n2 = Var(fresh.clause_var2(i))
        for l in sorted(clause):
            if l.positive:
                layer3.append(normal_default(f"d{i + 1}_{l.name}", Var(l.name), n))
            else:
                layer3.append(normal_default(f"d{i + 1}_not_{l.name}",
                                             Var(fresh.prime(l.name)), n))
        layer3.append(free_normal_default(f"d{i + 1}_tick", n2))
        layer3.append(normal_default(f"d{i + 1}_untick", n, Not(n2)))
        layer3.append(normal_default(f"d{i + 1}_fail", n2, FALSE))

    for top in layer1:
        for low in layer2 + layer3:
            pairs.append((top.id, low.id))
    if pin_middle_layer:
        for mid in layer2:
            for low in layer3:
                pairs.append((mid.id, low.id))

    thy = DefaultTheory(tuple(layer1 + layer2 + layer3), ())
    return thy, PriorityOrder.of(pairs, thy.ids)


def gen_b_normal_unary(c: CnfInstance) -> tuple[DefaultTheory, PriorityOrder]:
    """Normal unary theory with partial priorities: the CNF is satisfiable
    iff some Brewka-preferred (equivalently BH-preferred) extension omits
    the marker."""
    return _normal_unary_construction(c, pin_middle_layer=False)


def gen_lex_nu_partial(c: CnfInstance) -> tuple[DefaultTheory, PriorityOrder]:
    """The same layers read under the lexicographic semantics: the CNF is
    satisfiable iff the marker is not a lex consequence.

    The priorities additionally pin the prime gadgets above the clause
    gadgets.  With the layers left incomparable, a lex witness order can
    rank a clause-gadget win above the prime-gadget loss, letting an
    extension that asserts both a variable and its prime survive as
    preferred and breaking the unsatisfiable direction; pinning removes
    exactly that freedom and no witness in the satisfiable direction needs
    it (they order defaults within one layer only)."""
    return _normal_unary_construction(c, pin_middle_layer=True)


def gen_lex_max_qbf(q: QbfInstance) -> tuple[DefaultTheory, tuple[str, ...]]:
    """Theory and total order whose lex consequences read off the
    lexicographically maximal outer QBF assignment componentwise."""
    if max_2qbf_oracle(q) is None:
        raise UnsatisfiableQbfError("no outer assignment satisfies the matrix")
    defaults: list[Default] = [
        normal_default("d_matrix", q.matrix, Var(f"{FRESH_PREFIX}a"))]
    order = ["d_matrix"]
    for i in range(1, q.n + 1):
        defaults.append(free_normal_default(f"d_pos_{i}", Var(q.outer(i))))
        order.append(f"d_pos_{i}")
    for i in range(1, q.n + 1):
        defaults.append(free_normal_default(f"d_neg_{i}", Not(Var(q.outer(i)))))
        order.append(f"d_neg_{i}")
    return DefaultTheory(tuple(defaults), ()), tuple(order)


# ---------------------------------------------------------------------------
# brave-to-lex bridges

def _fresh_marker(thy: DefaultTheory, stem: str) -> str:
    used = set()
    for d in thy.defaults:
        used |= free_variables(d.prerequisite) | free_variables(d.conclusion)
        for b in d.justifications:
            used |= free_variables(b)
    for w in thy.objective:
        used |= free_variables(w)
    name = f"{FRESH_PREFIX}{stem}"
    k = 1
    while name in used:
        k += 1
        name = f"{FRESH_PREFIX}{stem}{k}"
    return name


def brave_to_lex(thy: DefaultTheory,
                 phi: Formula) -> tuple[DefaultTheory, PriorityOrder, str]:
    """Append a top-priority marker default phi : k / k with k fresh; the
    theory bravely entails phi iff the marker is a lex consequence.
    Presumes the theory has at least one extension."""
    marker = _fresh_marker(thy, "k")
    d = normal_default("d_brave_marker", phi, Var(marker))
    extended = DefaultTheory(thy.defaults + (d,), thy.objective)
    priority = PriorityOrder.of([(d.id, other.id) for other in thy.defaults],
                                extended.ids)
    return extended, priority, marker


def brave_literal_to_lex_total(thy: DefaultTheory,
                               l: Literal) -> tuple[DefaultTheory, tuple[str, ...]]:
    """Total order putting the defaults that conclude the literal first; the
    theory bravely entails the literal iff it is a lex consequence under
    that order.  Presumes literal conclusions and an existing extension."""
    target = l.formula()
    first = sorted(d.id for d in thy.defaults if d.conclusion == target)
    rest = sorted(d.id for d in thy.defaults if d.conclusion != target)
    return thy, tuple(first + rest)
