"""Propositional formulas: syntax tree, text grammar, and clausal conversion.

Grammar (used by the theory file format):

    formula := disj ( "->" formula )?          right associative
    disj    := conj ( "|" conj )*              right associative
    conj    := unary ( "&" unary )*            right associative
    unary   := "~" unary | "(" formula ")" | "true" | "false" | IDENT

Identifiers are case sensitive and may contain letters, digits, "_", "-"
and "'" (they must start with a letter or "_").  The tokens ``true`` and
``false`` are reserved.  ``true`` is the valid constant.  ``false`` is the
designated falsity marker: it parses to a reserved atom, so a theory may
conclude it and a consistent set of facts never entails it unless it is
derivable.  Reduction-generated theories rely on exactly this behaviour.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple

from .errors import FormulaSyntaxError


class Formula:
    """Base class for formula nodes.  All nodes are immutable and hashable."""

    __slots__ = ()

    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __invert__(self) -> "Formula":
        return Not(self)

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True, slots=True)
class Const(Formula):
    value: bool

    def __repr__(self) -> str:
        return "TRUE" if self.value else "BOT"


@dataclass(frozen=True, slots=True)
class Var(Formula):
    name: str

    def __repr__(self) -> str:
        return f"Var({self.name!r})"


@dataclass(frozen=True, slots=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Imp(Formula):
    left: Formula
    right: Formula


TRUE = Const(True)
#: Real falsity (no model); produced only by formula algebra, never by the parser.
BOT = Const(False)
#: The reserved marker atom written ``false`` in the text grammar.
FALSE = Var("false")

_RESERVED = {"true", "false"}


class Literal(NamedTuple):
    """A propositional variable with a polarity."""

    name: str
    positive: bool

    def complement(self) -> "Literal":
        return Literal(self.name, not self.positive)

    def formula(self) -> Formula:
        v = Var(self.name)
        return v if self.positive else Not(v)

    def __str__(self) -> str:
        return self.name if self.positive else "~" + self.name


def lit(name: str, positive: bool = True) -> Literal:
    return Literal(name, positive)


def as_literal(f: Formula) -> Literal | None:
    """The literal a formula denotes, or None if it is not a literal."""
    if isinstance(f, Var):
        return Literal(f.name, True)
    if isinstance(f, Not) and isinstance(f.operand, Var):
        return Literal(f.operand.name, False)
    return None


def conj(parts: Iterable[Formula]) -> Formula:
    """Right-folded conjunction; TRUE for the empty sequence."""
    parts = list(parts)
    if not parts:
        return TRUE
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = And(p, out)
    return out


def disj(parts: Iterable[Formula]) -> Formula:
    parts = list(parts)
    if not parts:
        return BOT
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Or(p, out)
    return out


def flatten_conj(f: Formula) -> list[Formula]:
    """Conjuncts of a (possibly nested) conjunction, left to right."""
    out: list[Formula] = []
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, And):
            stack.append(g.right)
            stack.append(g.left)
        else:
            out.append(g)
    return out


def flatten_disj(f: Formula) -> list[Formula]:
    out: list[Formula] = []
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Or):
            stack.append(g.right)
            stack.append(g.left)
        else:
            out.append(g)
    return out


def free_variables(f: Formula) -> frozenset[str]:
    names: set[str] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Var):
            names.add(g.name)
        elif isinstance(g, Not):
            stack.append(g.operand)
        elif isinstance(g, (And, Or, Imp)):
            stack.append(g.left)
            stack.append(g.right)
    return frozenset(names)


def evaluate(f: Formula, model: dict[str, bool]) -> bool:
    """Truth value under a total assignment of the formula's variables.

    The marker atom ``false`` is looked up like any other variable and
    defaults to False when absent from the model.
    """
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Var):
        return model.get(f.name, False)
    if isinstance(f, Not):
        return not evaluate(f.operand, model)
    if isinstance(f, And):
        return evaluate(f.left, model) and evaluate(f.right, model)
    if isinstance(f, Or):
        return evaluate(f.left, model) or evaluate(f.right, model)
    if isinstance(f, Imp):
        return (not evaluate(f.left, model)) or evaluate(f.right, model)
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# printing

_PREC = {Imp: 1, Or: 2, And: 3, Not: 4}


def _fmt(f: Formula, parent_prec: int) -> str:
    if isinstance(f, Const):
        return "true" if f.value else "~true"
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Not):
        return "~" + _fmt(f.operand, _PREC[Not])
    if isinstance(f, And):
        op, prec = " & ", _PREC[And]
    elif isinstance(f, Or):
        op, prec = " | ", _PREC[Or]
    elif isinstance(f, Imp):
        op, prec = " -> ", _PREC[Imp]
    else:
        raise TypeError(f"not a formula: {f!r}")
    # Binary operators are right associative: the left child needs parens at
    # equal precedence, the right child does not.
    s = _fmt(f.left, prec + 1) + op + _fmt(f.right, prec)
    return "(" + s + ")" if prec < parent_prec else s


def format_formula(f: Formula) -> str:
    """Round-trips through parse_formula up to structural identity."""
    return _fmt(f, 0)


# ---------------------------------------------------------------------------
# parsing

_IDENT_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_IDENT_CONT = _IDENT_START | set("0123456789-'")


class _Tokens:
    def __init__(self, text: str, line: int | None):
        self.text = text
        self.line = line
        self.pos = 0
        self.tokens: list[tuple[str, str, int]] = []  # (kind, value, column)
        self._scan()
        self.index = 0

    def _scan(self) -> None:
        text, i, n = self.text, 0, len(self.text)
        while i < n:
            c = text[i]
            if c in " \t":
                i += 1
                continue
            col = i + 1
            if c in _IDENT_START:
                j = i + 1
                while j < n and text[j] in _IDENT_CONT:
                    j += 1
                self.tokens.append(("ident", text[i:j], col))
                i = j
            elif c == "~":
                self.tokens.append(("~", c, col)); i += 1
            elif c == "&":
                self.tokens.append(("&", c, col)); i += 1
            elif c == "|":
                self.tokens.append(("|", c, col)); i += 1
            elif c == "(":
                self.tokens.append(("(", c, col)); i += 1
            elif c == ")":
                self.tokens.append((")", c, col)); i += 1
            elif text.startswith("->", i):
                self.tokens.append(("->", "->", col)); i += 2
            else:
                raise FormulaSyntaxError(f"unexpected character {c!r}", self.line, col)

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def take(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise FormulaSyntaxError("unexpected end of formula", self.line,
                                     len(self.text) + 1)
        self.index += 1
        return tok


def _parse_unary(ts: _Tokens) -> Formula:
    kind, value, col = ts.take()
    if kind == "~":
        return Not(_parse_unary(ts))
    if kind == "(":
        f = _parse_formula(ts)
        kind2, _, col2 = ts.take()
        if kind2 != ")":
            raise FormulaSyntaxError("expected ')'", ts.line, col2)
        return f
    if kind == "ident":
        if value == "true":
            return TRUE
        if value == "false":
            return FALSE
        return Var(value)
    raise FormulaSyntaxError(f"unexpected token {value!r}", ts.line, col)


def _parse_conj(ts: _Tokens) -> Formula:
    f = _parse_unary(ts)
    tok = ts.peek()
    if tok is not None and tok[0] == "&":
        ts.take()
        return And(f, _parse_conj(ts))
    return f


def _parse_disj(ts: _Tokens) -> Formula:
    f = _parse_conj(ts)
    tok = ts.peek()
    if tok is not None and tok[0] == "|":
        ts.take()
        return Or(f, _parse_disj(ts))
    return f


def _parse_formula(ts: _Tokens) -> Formula:
    f = _parse_disj(ts)
    tok = ts.peek()
    if tok is not None and tok[0] == "->":
        ts.take()
        return Imp(f, _parse_formula(ts))
    return f


def parse_formula(text: str, line: int | None = None) -> Formula:
    ts = _Tokens(text, line)
    f = _parse_formula(ts)
    tok = ts.peek()
    if tok is not None:
        raise FormulaSyntaxError(f"trailing input {tok[1]!r}", line, tok[2])
    return f


# ---------------------------------------------------------------------------
# negation normal form and clausal conversion

def negate(f: Formula) -> Formula:
    """Logical negation with double negations removed."""
    if isinstance(f, Not):
        return f.operand
    if isinstance(f, Const):
        return Const(not f.value)
    return Not(f)


def _nnf(f: Formula, positive: bool, memo: dict) -> Formula:
    # Memoised per original node so shared subtrees stay shared.
    key = (id(f), positive)
    got = memo.get(key)
    if got is not None:
        return got
    if isinstance(f, Const):
        out: Formula = Const(f.value == positive)
    elif isinstance(f, Var):
        out = f if positive else Not(f)
    elif isinstance(f, Not):
        out = _nnf(f.operand, not positive, memo)
    elif isinstance(f, And):
        cls = And if positive else Or
        out = cls(_nnf(f.left, positive, memo), _nnf(f.right, positive, memo))
    elif isinstance(f, Or):
        cls = Or if positive else And
        out = cls(_nnf(f.left, positive, memo), _nnf(f.right, positive, memo))
    elif isinstance(f, Imp):
        if positive:
            out = Or(_nnf(f.left, False, memo), _nnf(f.right, True, memo))
        else:
            out = And(_nnf(f.left, True, memo), _nnf(f.right, False, memo))
    else:
        raise TypeError(f"not a formula: {f!r}")
    memo[key] = out
    return out


def nnf(f: Formula) -> Formula:
    return _nnf(f, True, {})


Clause = frozenset[Literal]

#: A satisfied (dropped) clause marker is simply absence; an empty frozenset
#: is the unsatisfiable clause.
_EMPTY: Clause = frozenset()

CLAUSE_LIMIT = 10_000


class _Blowup(Exception):
    pass


_MISS = object()


def _clauses_nnf(f: Formula, limit: int,
                 memo: dict) -> list[frozenset[Literal]] | None:
    """CNF of an NNF formula by distribution; None encodes TRUE; raises on blowup."""
    got = memo.get(id(f), _MISS)
    if got is not _MISS:
        return got
    if isinstance(f, Const):
        out = None if f.value else [_EMPTY]
    elif (l := as_literal(f)) is not None:
        out = [frozenset([l])]
    elif isinstance(f, (And, Or)):
        a = _clauses_nnf(f.left, limit, memo)
        b = _clauses_nnf(f.right, limit, memo)
        if isinstance(f, And):
            if a is None:
                out = b
            elif b is None:
                out = a
            else:
                if len(a) + len(b) > limit:
                    raise _Blowup
                out = a + b
        else:
            if a is None or b is None:
                out = None
            else:
                if len(a) * len(b) > limit:
                    raise _Blowup
                out = []
                for ca in a:
                    for cb in b:
                        c = ca | cb
                        if not any(x.complement() in c for x in c):
                            out.append(c)
    else:
        raise TypeError(f"unexpected NNF node: {f!r}")
    memo[id(f)] = out
    return out


@lru_cache(maxsize=65536)
def clausal_form(f: Formula, limit: int = CLAUSE_LIMIT) -> tuple[Clause, ...] | None:
    """Clauses equivalent to f, by distribution without fresh variables.

    Returns None when the distributed form would exceed `limit` literals;
    tautological clauses are dropped, so TRUE yields the empty tuple.
    """
    try:
        cs = _clauses_nnf(nnf(f), limit, {})
    except _Blowup:
        return None
    if cs is None:
        return ()
    # Drop subsumed duplicates for a stable, small result.
    uniq = sorted(set(cs), key=lambda c: (len(c), sorted(c)))
    out: list[Clause] = []
    for c in uniq:
        if not any(prev <= c for prev in out):
            out.append(c)
    return tuple(out)


def iter_models(names: Iterable[str]) -> Iterator[dict[str, bool]]:
    """All assignments over the given variable names."""
    names = sorted(set(names))
    for bits in range(1 << len(names)):
        yield {n: bool(bits >> i & 1) for i, n in enumerate(names)}
