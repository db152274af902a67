"""Core model of interactive rule-based specifications.

A specification is a 5-tuple of variables, an initial state, constraints,
user transitions and rule transitions.  States are consistent literal sets
(partial assignments); transitions rewrite states through the update
operator.  The module also carries a brute-force truth-table oracle used
throughout the test suites as the independent semantic reference; the
saturation engine is the production decision procedure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Literal as TypingLiteral, Mapping, Optional, Sequence

from . import formula as fm
from .formula import Formula

START = "start"

ORACLE_MAX_VARS = 24


class SpecError(ValueError):
    """Raised for malformed specifications, states or interpretations."""


class OracleScaleError(RuntimeError):
    """Raised when the enumeration oracle is asked to go beyond its guard."""


@dataclass(frozen=True, order=True)
class Variable:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, order=True)
class Literal:
    variable: Variable
    positive: bool = True

    def complement(self) -> "Literal":
        return Literal(self.variable, not self.positive)

    def __str__(self) -> str:
        return self.variable.name if self.positive else f"!{self.variable.name}"


def lit(spec_text: str) -> Literal:
    """Parse a single literal written as ``name`` or ``!name``."""
    text = spec_text.strip()
    if text.startswith("!"):
        return Literal(Variable(text[1:].strip()), False)
    return Literal(Variable(text), True)


@dataclass(frozen=True)
class State:
    """A consistent set of literals: no variable occurs with both signs."""

    literals: frozenset[Literal]

    def __post_init__(self) -> None:
        signs: dict[Variable, bool] = {}
        for l in self.literals:
            if signs.setdefault(l.variable, l.positive) != l.positive:
                raise SpecError(f"inconsistent state: both signs of {l.variable}")

    @classmethod
    def of(cls, *lits: str) -> "State":
        return cls(frozenset(lit(s) for s in lits))

    def variables(self) -> frozenset[Variable]:
        return frozenset(l.variable for l in self.literals)

    def sign(self, v: Variable) -> Optional[bool]:
        for l in self.literals:
            if l.variable == v:
                return l.positive
        return None

    def __contains__(self, l: Literal) -> bool:
        return l in self.literals

    def __iter__(self):
        return iter(self.literals)

    def __len__(self) -> int:
        return len(self.literals)

    def __str__(self) -> str:
        return "{" + ", ".join(sorted(str(l) for l in self.literals)) + "}"


EMPTY_STATE = State(frozenset())


@dataclass(frozen=True)
class Clause:
    """A disjunction of literals; the empty clause is the contradiction."""

    literals: frozenset[Literal]

    @classmethod
    def of(cls, *lits: str) -> "Clause":
        return cls(frozenset(lit(s) for s in lits))

    def is_empty(self) -> bool:
        return not self.literals

    def to_formula(self) -> Formula:
        if not self.literals:
            return fm.FALSE
        return fm.disj(
            fm.Atom(l.variable.name) if l.positive else fm.Not(fm.Atom(l.variable.name))
            for l in sorted(self.literals)
        )

    def __str__(self) -> str:
        if not self.literals:
            return "_|_"
        return " || ".join(str(l) for l in sorted(self.literals))


TransitionKind = TypingLiteral["user", "rule"]


@dataclass(frozen=True)
class Transition:
    index: int
    kind: TransitionKind
    condition: Formula
    effect: State

    def __str__(self) -> str:
        eff = " ".join(sorted(str(l) for l in self.effect))
        return f"{self.index}[{self.kind}]: {self.condition} ~> {{{eff}}}"


@dataclass(frozen=True)
class Specification:
    """Variables, initial state, constraints and transitions.

    The reserved variable ``start`` is added automatically and must not be
    used by any constraint, condition or effect.  Constraints keep their
    declaration order so diagnostics can point back at them.
    """

    variables: frozenset[Variable]
    initial: State
    constraints: tuple[Formula, ...]
    transitions: tuple[Transition, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", self.variables | {Variable(START)})
        names = [v.name for v in self.variables]
        if len(names) != len(set(names)):
            raise SpecError("duplicate variable names")
        known = {v.name for v in self.variables}
        for f in self.constraints:
            self._check_formula(f, known, "constraint")
        seen_idx: set[int] = set()
        for t in self.transitions:
            if t.index in seen_idx:
                raise SpecError(f"duplicate transition index {t.index}")
            seen_idx.add(t.index)
            self._check_formula(t.condition, known, f"transition {t.index} condition")
            for l in t.effect:
                if l.variable.name == START:
                    raise SpecError("reserved variable used in an effect")
                if l.variable.name not in known:
                    raise SpecError(f"unknown variable {l.variable.name} in effect")
        for l in self.initial:
            if l.variable.name == START:
                raise SpecError("reserved variable used in the initial state")
            if l.variable.name not in known:
                raise SpecError(f"unknown variable {l.variable.name} in initial state")

    @staticmethod
    def _check_formula(f: Formula, known: set[str], where: str) -> None:
        for name in fm.variables(f):
            if name == START:
                raise SpecError(f"reserved variable used in {where}")
            if name not in known:
                raise SpecError(f"unknown variable {name} in {where}")

    def ordered_variables(self) -> tuple[Variable, ...]:
        """Total variable order: ``start`` first, then lexicographic."""
        rest = sorted(v for v in self.variables if v.name != START)
        return (Variable(START), *rest)

    def transition(self, index: int) -> Transition:
        for t in self.transitions:
            if t.index == index:
                return t
        raise KeyError(index)

    def of_kind(self, kind: TransitionKind) -> tuple[Transition, ...]:
        return tuple(sorted((t for t in self.transitions if t.kind == kind), key=lambda t: t.index))


@dataclass(frozen=True)
class Interpretation:
    """Maps states to total valuations (the set of true variables).

    Each valuation must satisfy its state; ``start`` is implicitly true in
    every valuation and is inserted on construction.
    """

    assignment: Mapping[State, frozenset[Variable]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        fixed = {}
        for state, val in self.assignment.items():
            val = frozenset(val) | {Variable(START)}
            for l in state:
                if l.positive and l.variable not in val:
                    raise SpecError(f"valuation of {state} misses {l.variable}")
                if not l.positive and l.variable in val:
                    raise SpecError(f"valuation of {state} contradicts !{l.variable}")
            fixed[state] = val
        object.__setattr__(self, "assignment", fixed)

    def valuation(self, state: State) -> frozenset[Variable]:
        return self.assignment[state]


def update(s: State, e: State) -> State:
    """Update ``s`` by ``e``: contradicted literals are replaced, new ones added."""
    kept = frozenset(l for l in s if l.complement() not in e)
    return State(kept | e.literals)


def cnf(formulas: Iterable[Formula]) -> frozenset[Clause]:
    """Conjunctive normal form of a formula set over the original variables.

    Tautological clauses are removed and duplicate literals collapse.
    """
    out = set()
    for c in fm.clausify_all(formulas):
        out.add(Clause(frozenset(Literal(Variable(n), pos) for n, pos in c)))
    return frozenset(out)


# ---------------------------------------------------------------------------
# Truth-table oracle.  Satisfying sets are represented as bitmasks over all
# 2^n valuations, so entailment checks are a handful of big-int operations.
# ---------------------------------------------------------------------------


class TruthTable:
    """Bit-parallel enumeration of every valuation of a small variable set."""

    def __init__(self, variables: Iterable[Variable]):
        names = sorted({v.name for v in variables} | {START})
        if len(names) > ORACLE_MAX_VARS:
            raise OracleScaleError(
                f"oracle scale exceeded: {len(names)} variables (max {ORACLE_MAX_VARS})"
            )
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}
        self.size = 1 << len(names)
        self.full = (1 << self.size) - 1
        self._var_masks: dict[str, int] = {}

    def var_mask(self, name: str) -> int:
        m = self._var_masks.get(name)
        if m is None:
            i = self.index[name]
            width = 1 << (i + 1)
            m = ((1 << (1 << i)) - 1) << (1 << i)
            while width < self.size:
                m |= m << width
                width <<= 1
            self._var_masks[name] = m
        return m

    def formula_mask(self, f: Formula) -> int:
        if isinstance(f, fm.Atom):
            return self.var_mask(f.name)
        if isinstance(f, fm.Not):
            return self.full & ~self.formula_mask(f.arg)
        if isinstance(f, fm.And):
            m = self.full
            for a in f.args:
                m &= self.formula_mask(a)
            return m
        if isinstance(f, fm.Or):
            m = 0
            for a in f.args:
                m |= self.formula_mask(a)
            return m
        if isinstance(f, fm.Implies):
            return (self.full & ~self.formula_mask(f.lhs)) | self.formula_mask(f.rhs)
        return self.full if f.value else 0

    def state_mask(self, s: State) -> int:
        m = self.full
        for l in s:
            vm = self.var_mask(l.variable.name)
            m &= vm if l.positive else (self.full & ~vm)
        return m

    def context_mask(self, s: State, constraints: Iterable[Formula]) -> int:
        m = self.state_mask(s)
        for f in constraints:
            m &= self.formula_mask(f)
        return m


def entails_oracle(s: State, constraints: Iterable[Formula], phi: Formula) -> bool:
    """True iff every total valuation satisfying ``s`` and the constraints
    satisfies ``phi``.  Enumeration-based; guarded by ``ORACLE_MAX_VARS``."""
    constraints = tuple(constraints)
    tt = TruthTable(_oracle_vars(s, constraints, phi))
    return tt.context_mask(s, constraints) & ~tt.formula_mask(phi) & tt.full == 0


def state_consistent_oracle(s: State, constraints: Iterable[Formula]) -> bool:
    """True iff some total valuation satisfies ``s`` and all constraints."""
    constraints = tuple(constraints)
    tt = TruthTable(_oracle_vars(s, constraints, fm.TRUE))
    return tt.context_mask(s, constraints) != 0


def _oracle_vars(s: State, constraints: Sequence[Formula], phi: Formula) -> frozenset[Variable]:
    names = set(fm.variables(phi))
    for f in constraints:
        names |= fm.variables(f)
    return frozenset(Variable(n) for n in names) | s.variables()


def applicable_transitions(
    s: State,
    spec: Specification,
    kind: TransitionKind,
    entails=None,
) -> list[Transition]:
    """Transitions of the given kind whose condition is entailed by ``s`` plus
    the constraints, in ascending index order.

    Empty when the state contradicts the constraints.  User transitions are
    only reported in rule-terminal states.  ``entails(state, formula)`` may be
    supplied to swap the default truth-table oracle for another decision
    procedure.
    """
    ent = entails or (lambda st, phi: entails_oracle(st, spec.constraints, phi))
    if ent(s, fm.FALSE):
        return []
    if kind == "user" and not is_rule_terminal(s, spec, entails=entails):
        return []
    return [t for t in spec.of_kind(kind) if ent(s, t.condition)]


def is_rule_terminal(s: State, spec: Specification, entails=None) -> bool:
    """True iff no entailed rule transition changes the state."""
    ent = entails or (lambda st, phi: entails_oracle(st, spec.constraints, phi))
    for t in spec.of_kind("rule"):
        if ent(s, t.condition) and update(s, t.effect) != s:
            return False
    return True


def is_model(interp: Interpretation, spec: Specification, reachable: Iterable[State]) -> bool:
    """True iff the interpretation satisfies every constraint on each
    reachable state.  State satisfaction and ``start`` membership already
    hold by construction of :class:`Interpretation`."""
    for state in reachable:
        if state not in interp.assignment:
            raise SpecError(f"interpretation does not map reachable state {state}")
        names = {v.name for v in interp.valuation(state)}
        for f in spec.constraints:
            if not fm.evaluate(f, names):
                return False
    return True
