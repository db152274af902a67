"""Translation of configuration models into specifications.

Boolean decisions get a ``d_Yes``/``d_No`` variable pair, enumeration
decisions one variable per option, every decision a ``Visible_d`` variable,
every asset its own variable.  Visibility and asset conditions become
constraints, rules become rule transitions, decision taking becomes user
transitions guarded by visibility and untakenness, and the initial state
assigns every decision-value variable negatively (visibility and asset
variables are left open for the constraints to settle).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .. import formula as fm
from ..core import Literal, Specification, State, Transition, Variable
from ..exprs import (
    AndE,
    Assign,
    BoolAtom,
    ConstE,
    ContainsOnly,
    Equals,
    Expression,
    IsTaken,
    NotE,
    OrE,
    SetValue,
    parse_formula,
)
from ..formula import Formula
from .model import Decision, DoplerModel, ModelError, validate_model


def yes_var(name: str) -> str:
    return f"{name}_Yes"


def no_var(name: str) -> str:
    return f"{name}_No"


def option_var(name: str, option: str) -> str:
    return f"{name}_{option}"


def visible_var(name: str) -> str:
    return f"Visible_{name}"


@dataclass(frozen=True)
class Origin:
    """Where a translated constraint came from, for diagnostics."""

    kind: str  # visibility | cardinality | asset_inclusion | asset_includes
    #            | asset_excludes | constraint | raw_constraint
    subject: str = ""
    detail: str = ""

    def involves_assets(self) -> bool:
        return self.kind.startswith("asset_")

    def __str__(self) -> str:
        if self.detail:
            return f"{self.kind}({self.subject}, {self.detail})"
        if self.subject:
            return f"{self.kind}({self.subject})"
        return self.kind


def translate_expression(e: Expression, model: DoplerModel) -> Formula:
    """Expression to formula over the translated variables.

    A syntactically negated boolean atom ``!d`` means the decision was
    assigned false (``d_No``); negation of anything compound stays
    propositional."""
    decisions = {d.name: d for d in model.decisions}

    def tr(e: Expression) -> Formula:
        if isinstance(e, BoolAtom):
            return fm.Atom(yes_var(e.name))
        if isinstance(e, NotE):
            if isinstance(e.arg, BoolAtom):
                return fm.Atom(no_var(e.arg.name))
            return fm.Not(tr(e.arg))
        if isinstance(e, AndE):
            return fm.conj(tr(a) for a in e.args)
        if isinstance(e, OrE):
            return fm.disj(tr(a) for a in e.args)
        if isinstance(e, Equals):
            return fm.Atom(option_var(e.decision, e.option))
        if isinstance(e, ContainsOnly):
            d = decisions[e.decision]
            parts: list[Formula] = [fm.Atom(option_var(d.name, e.option))]
            parts.extend(
                fm.Not(fm.Atom(option_var(d.name, o))) for o in d.options if o != e.option
            )
            return fm.conj(parts)
        if isinstance(e, IsTaken):
            d = decisions[e.name]
            if d.is_enum():
                return fm.disj(fm.Atom(option_var(d.name, o)) for o in d.options)
            return fm.disj((fm.Atom(yes_var(d.name)), fm.Atom(no_var(d.name))))
        assert isinstance(e, ConstE)
        return fm.TRUE if e.value else fm.FALSE

    return tr(e)


def enumeration_constraints(d: Decision) -> list[Formula]:
    """Cardinality formulas enforcing min_select..max_select options.

    At-most-k: no (k+1)-subset all selected; at-least-k: every
    (n-k+1)-subset contains a selected option.  Desk-scale expansion."""
    if not d.is_enum():
        raise ModelError(f"{d.name} is not an enumeration decision")
    out: list[Formula] = []
    opts = d.options
    if d.max_select < len(opts):
        for subset in itertools.combinations(opts, d.max_select + 1):
            out.append(
                fm.Not(fm.conj(fm.Atom(option_var(d.name, o)) for o in subset))
            )
    if d.min_select > 0:
        for subset in itertools.combinations(opts, len(opts) - d.min_select + 1):
            out.append(fm.disj(fm.Atom(option_var(d.name, o)) for o in subset))
    return out


@dataclass(frozen=True)
class Translation:
    """A translated model: the specification plus the maps that carry
    findings back to decisions, assets and user actions."""

    model: DoplerModel
    spec: Specification
    constraint_origins: tuple[Origin, ...]
    user_action_of: dict[tuple[str, str], int]  # (decision, value token) -> index
    action_of_index: dict[int, tuple[str, str]]
    rule_count: int

    def value_vars(self) -> tuple[str, ...]:
        out = []
        for d in self.model.decisions:
            if d.is_enum():
                out.extend(option_var(d.name, o) for o in d.options)
            else:
                out.extend((yes_var(d.name), no_var(d.name)))
        return tuple(out)

    def asset_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.model.assets)


def _decision_effect(model: DoplerModel, actions, where: str = "rule") -> State:
    lits: list[Literal] = []
    for act in actions:
        if isinstance(act, Assign):
            if act.value:
                lits.append(Literal(Variable(yes_var(act.decision)), True))
                lits.append(Literal(Variable(no_var(act.decision)), False))
            else:
                lits.append(Literal(Variable(no_var(act.decision)), True))
                lits.append(Literal(Variable(yes_var(act.decision)), False))
        else:
            assert isinstance(act, SetValue)
            lits.append(Literal(Variable(option_var(act.decision, act.option)), True))
    try:
        return State(frozenset(lits))
    except ValueError as e:
        raise ModelError(f"{where}: contradictory actions ({e})") from e


def build_translation(model: DoplerModel) -> Translation:
    validate_model(model)
    variables: list[str] = []
    for d in model.decisions:
        if d.is_enum():
            variables.extend(option_var(d.name, o) for o in d.options)
        else:
            variables.extend((yes_var(d.name), no_var(d.name)))
    value_vars = list(variables)
    variables.extend(visible_var(d.name) for d in model.decisions)
    variables.extend(a.name for a in model.assets)
    if len(set(variables)) != len(variables):
        dupes = sorted({v for v in variables if variables.count(v) > 1})
        raise ModelError(f"translated variable names collide: {dupes}")

    constraints: list[Formula] = []
    origins: list[Origin] = []

    def add(formula: Formula, origin: Origin) -> None:
        constraints.append(formula)
        origins.append(origin)

    for d in model.decisions:
        if d.visibility is not None:
            add(
                fm.Implies(
                    translate_expression(d.visibility, model),
                    fm.Atom(visible_var(d.name)),
                ),
                Origin("visibility", d.name),
            )
    for d in model.decisions:
        if d.is_enum():
            for formula in enumeration_constraints(d):
                add(formula, Origin("cardinality", d.name))
    for a in model.assets:
        if a.inclusion is not None:
            add(
                fm.Implies(translate_expression(a.inclusion, model), fm.Atom(a.name)),
                Origin("asset_inclusion", a.name),
            )
        for b in a.includes:
            add(
                fm.Implies(fm.Atom(a.name), fm.Atom(b)),
                Origin("asset_includes", a.name, b),
            )
        for b in a.excludes:
            add(
                fm.Implies(fm.Atom(a.name), fm.Not(fm.Atom(b))),
                Origin("asset_excludes", a.name, b),
            )
    for k, e in enumerate(model.extra_constraints):
        add(translate_expression(e, model), Origin("constraint", str(k)))
    known = set(variables)
    for k, text in enumerate(model.pidl_constraints):
        formula = parse_formula(text)
        unknown = sorted(n for n in fm.variables(formula) if n not in known)
        if unknown:
            raise ModelError(f"pidl_constraints[{k}]: unknown variables {unknown}")
        add(formula, Origin("raw_constraint", str(k)))

    transitions: list[Transition] = []
    for k, rule in enumerate(model.rules):
        transitions.append(
            Transition(
                index=k + 1,
                kind="rule",
                condition=translate_expression(rule.condition, model),
                effect=_decision_effect(model, rule.actions, f"rules[{k}]"),
            )
        )
    user_action_of: dict[tuple[str, str], int] = {}
    action_of_index: dict[int, tuple[str, str]] = {}
    index = len(model.rules) + 1

    def add_user(d: Decision, token: str, condition: Formula, effect: State) -> None:
        nonlocal index
        transitions.append(
            Transition(index=index, kind="user", condition=condition, effect=effect)
        )
        user_action_of[(d.name, token)] = index
        action_of_index[index] = (d.name, token)
        index += 1

    for d in model.decisions:
        if d.is_enum():
            untaken = fm.conj(
                fm.Not(fm.Atom(option_var(d.name, o))) for o in d.options
            )
            condition = fm.conj((fm.Atom(visible_var(d.name)), untaken))
            for o in d.options:
                add_user(
                    d,
                    o,
                    condition,
                    State(frozenset({Literal(Variable(option_var(d.name, o)), True)})),
                )
        else:
            condition = fm.conj(
                (
                    fm.Atom(visible_var(d.name)),
                    fm.Not(fm.Atom(yes_var(d.name))),
                    fm.Not(fm.Atom(no_var(d.name))),
                )
            )
            add_user(d, "true", condition, _decision_effect(model, [Assign(d.name, True)]))
            add_user(d, "false", condition, _decision_effect(model, [Assign(d.name, False)]))

    initial = State(frozenset(Literal(Variable(v), False) for v in value_vars))
    spec = Specification(
        variables=frozenset(Variable(v) for v in variables),
        initial=initial,
        constraints=tuple(constraints),
        transitions=tuple(transitions),
    )
    return Translation(
        model=model,
        spec=spec,
        constraint_origins=tuple(origins),
        user_action_of=user_action_of,
        action_of_index=action_of_index,
        rule_count=len(model.rules),
    )


def translate(model: DoplerModel) -> Specification:
    return build_translation(model).spec
