"""Propositional formulas over named variables.

Formulas are immutable trees built from atoms, negation, n-ary
conjunction/disjunction, implication and the two constants.  The module
also provides evaluation under a total valuation and clausification by
negation normal form plus distribution (no fresh variables are ever
introduced, so clauses stay over the original variable set).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import AbstractSet, Iterable, Union


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Not:
    arg: "Formula"

    def __str__(self) -> str:
        return f"!{_paren(self.arg, _UNARY)}"


@dataclass(frozen=True)
class And:
    args: tuple["Formula", ...]

    def __str__(self) -> str:
        return " && ".join(_paren(a, _AND) for a in self.args)


@dataclass(frozen=True)
class Or:
    args: tuple["Formula", ...]

    def __str__(self) -> str:
        return " || ".join(_paren(a, _OR) for a in self.args)


@dataclass(frozen=True)
class Implies:
    lhs: "Formula"
    rhs: "Formula"

    def __str__(self) -> str:
        # No implication in the surface grammar; print the equivalent disjunction.
        return str(Or((Not(self.lhs), self.rhs)))


@dataclass(frozen=True)
class Const:
    value: bool

    def __str__(self) -> str:
        return "true" if self.value else "false"


TRUE = Const(True)
FALSE = Const(False)

Formula = Union[Atom, Not, And, Or, Implies, Const]

# Precedence levels for printing: higher binds tighter.
_OR, _AND, _UNARY = 1, 2, 3


def _level(f: Formula) -> int:
    if isinstance(f, Or) and len(f.args) > 1:
        return _OR
    if isinstance(f, Implies):
        return _OR
    if isinstance(f, And) and len(f.args) > 1:
        return _AND
    return _UNARY


def _paren(f: Formula, ctx: int) -> str:
    s = str(f)
    return f"({s})" if _level(f) < ctx else s


def conj(args: Iterable[Formula]) -> Formula:
    """N-ary conjunction with constant folding and flattening."""
    flat: list[Formula] = []
    for a in args:
        if a == FALSE:
            return FALSE
        if a == TRUE:
            continue
        if isinstance(a, And):
            flat.extend(a.args)
        else:
            flat.append(a)
    if not flat:
        return TRUE
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat))


def disj(args: Iterable[Formula]) -> Formula:
    """N-ary disjunction with constant folding and flattening."""
    flat: list[Formula] = []
    for a in args:
        if a == TRUE:
            return TRUE
        if a == FALSE:
            continue
        if isinstance(a, Or):
            flat.extend(a.args)
        else:
            flat.append(a)
    if not flat:
        return FALSE
    if len(flat) == 1:
        return flat[0]
    return Or(tuple(flat))


def variables(f: Formula) -> frozenset[str]:
    """All variable names occurring in the formula."""
    if isinstance(f, Atom):
        return frozenset((f.name,))
    if isinstance(f, Not):
        return variables(f.arg)
    if isinstance(f, (And, Or)):
        out: frozenset[str] = frozenset()
        for a in f.args:
            out |= variables(a)
        return out
    if isinstance(f, Implies):
        return variables(f.lhs) | variables(f.rhs)
    return frozenset()


def evaluate(f: Formula, true_vars: AbstractSet[str]) -> bool:
    """Evaluate under the total valuation that makes exactly ``true_vars`` true."""
    if isinstance(f, Atom):
        return f.name in true_vars
    if isinstance(f, Not):
        return not evaluate(f.arg, true_vars)
    if isinstance(f, And):
        return all(evaluate(a, true_vars) for a in f.args)
    if isinstance(f, Or):
        return any(evaluate(a, true_vars) for a in f.args)
    if isinstance(f, Implies):
        return (not evaluate(f.lhs, true_vars)) or evaluate(f.rhs, true_vars)
    return f.value


def nnf(f: Formula, negate: bool = False) -> Formula:
    """Negation normal form: implication-free, negation only on atoms."""
    if isinstance(f, Atom):
        return Not(f) if negate else f
    if isinstance(f, Const):
        return Const(f.value != negate)
    if isinstance(f, Not):
        return nnf(f.arg, not negate)
    if isinstance(f, Implies):
        return nnf(Or((Not(f.lhs), f.rhs)), negate)
    if isinstance(f, And):
        parts = tuple(nnf(a, negate) for a in f.args)
        return disj(parts) if negate else conj(parts)
    parts = tuple(nnf(a, negate) for a in f.args)
    return conj(parts) if negate else disj(parts)


# A clause literal is (variable name, positive?); a clause is a frozenset of them.
ClauseLits = frozenset[tuple[str, bool]]


def clausify(f: Formula) -> frozenset[ClauseLits]:
    """CNF of a single formula by distribution.

    Tautological clauses are dropped and duplicate literals collapse via the
    set representation.  The empty formula set convention: ``TRUE`` yields no
    clauses, ``FALSE`` yields the empty clause.
    """
    return _distribute(nnf(f))


def clausify_all(formulas: Iterable[Formula]) -> frozenset[ClauseLits]:
    out: set[ClauseLits] = set()
    for f in formulas:
        out |= _distribute(nnf(f))
    return frozenset(out)


def _distribute(f: Formula) -> frozenset[ClauseLits]:
    if isinstance(f, Const):
        return frozenset() if f.value else frozenset((frozenset(),))
    if isinstance(f, Atom):
        return frozenset((frozenset(((f.name, True),)),))
    if isinstance(f, Not):
        assert isinstance(f.arg, Atom), "clausify requires NNF input"
        return frozenset((frozenset(((f.arg.name, False),)),))
    if isinstance(f, And):
        out: set[ClauseLits] = set()
        for a in f.args:
            out |= _distribute(a)
        return frozenset(out)
    assert isinstance(f, Or)
    acc: list[ClauseLits] = [frozenset()]
    for a in f.args:
        branches = _distribute(a)
        acc = [c | d for c in acc for d in branches]
    return frozenset(c for c in acc if not _tautological(c))


def _tautological(clause: ClauseLits) -> bool:
    seen = {}
    for name, pos in clause:
        if seen.get(name, pos) != pos:
            return True
        seen[name] = pos
    return False
