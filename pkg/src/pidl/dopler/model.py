"""Configuration-model types and the JSON model format.

A model consists of decisions (boolean or enumeration), rules of the form
``if <condition> then <action>``, assets with inclusion conditions and
include/exclude dependencies, extra constraints, and named incompleteness
check formulas.  The document layout::

    {
      "description": "...",                      # optional, ignored
      "decisions": [
        {"name": "d", "type": "boolean", "visibility": "true"},
        {"name": "e", "type": "enumeration", "options": ["x", "y"],
         "min_select": 0, "max_select": 1}
      ],
      "rules":  [{"if": "d", "then": ["e = true"], "note": "..."}],
      "assets": [{"name": "a", "inclusion": "d", "includes": [], "excludes": []}],
      "constraints": ["..."],                    # model expressions
      "pidl_constraints": ["!d_Yes || e_Yes"],   # over translated variables
      "checks": {"name": "expression"}
    }

A decision without a ``visibility`` entry is never visible to the user (it
can only be driven by rules).  ``pidl_constraints`` bypass the decision
vocabulary and constrain the translated variables directly; they are
validated against the variable set during translation.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any, Optional

from ..exprs import (
    Action,
    AndE,
    Assign,
    BoolAtom,
    ConstE,
    ContainsOnly,
    Equals,
    ExprError,
    Expression,
    IsTaken,
    NotE,
    OrE,
    TRUE_E,
    parse_action,
    parse_expression,
    parse_formula,
)

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_RESERVED = {"true", "false", "isTaken", "containsOnly", "setValue", "start"}


class ModelError(ValueError):
    """Validation or parse failure, prefixed with the offending element."""


@dataclass(frozen=True)
class Decision:
    name: str
    kind: str  # "boolean" | "enumeration"
    options: tuple[str, ...] = ()
    min_select: int = 0
    max_select: int = 1
    visibility: Optional[Expression] = None  # None: never visible

    def is_enum(self) -> bool:
        return self.kind == "enumeration"


@dataclass(frozen=True)
class Rule:
    condition: Expression
    actions: tuple[Action, ...]
    note: str = ""


@dataclass(frozen=True)
class Asset:
    name: str
    inclusion: Optional[Expression] = None
    includes: tuple[str, ...] = ()
    excludes: tuple[str, ...] = ()


@dataclass(frozen=True)
class DoplerModel:
    decisions: tuple[Decision, ...] = ()
    rules: tuple[Rule, ...] = ()
    assets: tuple[Asset, ...] = ()
    extra_constraints: tuple[Expression, ...] = ()
    pidl_constraints: tuple[str, ...] = ()
    checks: tuple[tuple[str, Expression], ...] = ()
    description: str = ""

    def decision(self, name: str) -> Decision:
        for d in self.decisions:
            if d.name == name:
                return d
        raise KeyError(name)

    def statically_visible(self) -> tuple[Decision, ...]:
        return tuple(d for d in self.decisions if d.visibility == TRUE_E)


def _check_name(name: str, where: str) -> str:
    if not isinstance(name, str) or not _NAME.match(name) or name in _RESERVED:
        raise ModelError(f"{where}: invalid name {name!r}")
    return name


def check_expression(e: Expression, model: DoplerModel, where: str) -> None:
    """Type-check an expression against the model's decisions."""
    decisions = {d.name: d for d in model.decisions}

    def visit(e: Expression) -> None:
        if isinstance(e, BoolAtom):
            d = decisions.get(e.name)
            if d is None:
                raise ModelError(f"{where}: unknown decision {e.name!r}")
            if d.is_enum():
                raise ModelError(
                    f"{where}: enumeration decision {e.name!r} used as a boolean atom"
                )
        elif isinstance(e, NotE):
            visit(e.arg)
        elif isinstance(e, (AndE, OrE)):
            for a in e.args:
                visit(a)
        elif isinstance(e, Equals):
            _check_enum_option(decisions, e.decision, e.option, where)
        elif isinstance(e, ContainsOnly):
            _check_enum_option(decisions, e.decision, e.option, where)
        elif isinstance(e, IsTaken):
            if e.name not in decisions:
                raise ModelError(f"{where}: unknown decision {e.name!r}")
        elif isinstance(e, ConstE):
            pass
        else:
            raise ModelError(f"{where}: unsupported expression {e!r}")

    visit(e)


def _check_enum_option(decisions, name: str, option: str, where: str) -> None:
    d = decisions.get(name)
    if d is None:
        raise ModelError(f"{where}: unknown decision {name!r}")
    if not d.is_enum():
        raise ModelError(f"{where}: {name!r} is not an enumeration decision")
    if option not in d.options:
        raise ModelError(f"{where}: {option!r} is not an option of {name!r}")


def validate_model(model: DoplerModel) -> DoplerModel:
    names: set[str] = set()
    for d in model.decisions:
        _check_name(d.name, f"decision {d.name!r}")
        if d.name in names:
            raise ModelError(f"decision {d.name!r}: duplicate name")
        names.add(d.name)
        if d.kind not in ("boolean", "enumeration"):
            raise ModelError(f"decision {d.name!r}: unknown type {d.kind!r}")
        if d.is_enum():
            if not d.options:
                raise ModelError(f"decision {d.name!r}: enumeration without options")
            if len(set(d.options)) != len(d.options):
                raise ModelError(f"decision {d.name!r}: duplicate options")
            for o in d.options:
                _check_name(o, f"decision {d.name!r} option")
            if not (0 <= d.min_select <= d.max_select <= len(d.options)):
                raise ModelError(
                    f"decision {d.name!r}: need 0 <= min_select <= max_select <= #options"
                )
        elif d.options:
            raise ModelError(f"decision {d.name!r}: boolean decisions take no options")
        if d.visibility is not None:
            check_expression(d.visibility, model, f"decision {d.name!r} visibility")
    asset_names: set[str] = set()
    for a in model.assets:
        _check_name(a.name, f"asset {a.name!r}")
        if a.name in asset_names or a.name in names:
            raise ModelError(f"asset {a.name!r}: duplicate or clashing name")
        asset_names.add(a.name)
    for a in model.assets:
        if a.inclusion is not None:
            check_expression(a.inclusion, model, f"asset {a.name!r} inclusion")
        for other in (*a.includes, *a.excludes):
            if other not in asset_names:
                raise ModelError(f"asset {a.name!r}: unknown asset {other!r}")
        both = set(a.includes) & set(a.excludes)
        if both:
            raise ModelError(
                f"asset {a.name!r}: includes and excludes {sorted(both)!r}"
            )
    decisions = {d.name: d for d in model.decisions}
    for k, r in enumerate(model.rules):
        where = f"rules[{k}]"
        check_expression(r.condition, model, where)
        if not r.actions:
            raise ModelError(f"{where}: rule without actions")
        for act in r.actions:
            if isinstance(act, Assign):
                d = decisions.get(act.decision)
                if d is None:
                    raise ModelError(f"{where}: unknown decision {act.decision!r}")
                if d.is_enum():
                    raise ModelError(
                        f"{where}: boolean assignment to enumeration {act.decision!r}"
                    )
            else:
                _check_enum_option(decisions, act.decision, act.option, where)
    for k, e in enumerate(model.extra_constraints):
        check_expression(e, model, f"constraints[{k}]")
    for name, e in model.checks:
        _check_name(name, f"check {name!r}")
        check_expression(e, model, f"check {name!r}")
    return model


def parse_model(text: str) -> DoplerModel:
    """Parse and validate a JSON model document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelError(f"line {e.lineno}, column {e.colno}: {e.msg}") from e
    if not isinstance(doc, dict):
        raise ModelError("model document must be a JSON object")
    return model_from_json(doc)


def _parse_expr(text: Any, where: str) -> Expression:
    if not isinstance(text, str):
        raise ModelError(f"{where}: expected an expression string")
    try:
        return parse_expression(text)
    except ExprError as e:
        raise ModelError(f"{where}: {e}") from e


def model_from_json(doc: dict[str, Any]) -> DoplerModel:
    decisions = []
    for k, entry in enumerate(doc.get("decisions", [])):
        where = f"decisions[{k}]"
        try:
            name = entry["name"]
            kind = entry.get("type", "boolean")
        except (KeyError, TypeError) as e:
            raise ModelError(f"{where}: {e}") from e
        vis = entry.get("visibility")
        decisions.append(
            Decision(
                name=name,
                kind=kind,
                options=tuple(entry.get("options", ())),
                min_select=int(entry.get("min_select", 0)),
                max_select=int(entry.get("max_select", 1)),
                visibility=None if vis is None else _parse_expr(vis, where),
            )
        )
    rules = []
    for k, entry in enumerate(doc.get("rules", [])):
        where = f"rules[{k}]"
        try:
            cond = _parse_expr(entry["if"], where)
            raw_actions = entry["then"]
        except (KeyError, TypeError) as e:
            raise ModelError(f"{where}: missing field {e}") from e
        actions = []
        for a in raw_actions:
            try:
                actions.append(parse_action(a))
            except ExprError as e:
                raise ModelError(f"{where}: {e}") from e
        rules.append(Rule(cond, tuple(actions), note=entry.get("note", "")))
    assets = []
    for k, entry in enumerate(doc.get("assets", [])):
        where = f"assets[{k}]"
        try:
            name = entry["name"]
        except (KeyError, TypeError) as e:
            raise ModelError(f"{where}: {e}") from e
        incl = entry.get("inclusion")
        assets.append(
            Asset(
                name=name,
                inclusion=None if incl is None else _parse_expr(incl, where),
                includes=tuple(entry.get("includes", ())),
                excludes=tuple(entry.get("excludes", ())),
            )
        )
    extra = tuple(
        _parse_expr(s, f"constraints[{k}]")
        for k, s in enumerate(doc.get("constraints", []))
    )
    raw = []
    for k, s in enumerate(doc.get("pidl_constraints", [])):
        try:
            parse_formula(s)
        except ExprError as e:
            raise ModelError(f"pidl_constraints[{k}]: {e}") from e
        raw.append(s)
    checks = tuple(
        (name, _parse_expr(s, f"checks[{name}]"))
        for name, s in doc.get("checks", {}).items()
    )
    model = DoplerModel(
        decisions=tuple(decisions),
        rules=tuple(rules),
        assets=tuple(assets),
        extra_constraints=extra,
        pidl_constraints=tuple(raw),
        checks=checks,
        description=doc.get("description", ""),
    )
    return validate_model(model)


def model_to_json(model: DoplerModel) -> dict[str, Any]:
    doc: dict[str, Any] = {}
    if model.description:
        doc["description"] = model.description
    doc["decisions"] = []
    for d in model.decisions:
        entry: dict[str, Any] = {"name": d.name, "type": d.kind}
        if d.is_enum():
            entry["options"] = list(d.options)
            entry["min_select"] = d.min_select
            entry["max_select"] = d.max_select
        if d.visibility is not None:
            entry["visibility"] = str(d.visibility)
        doc["decisions"].append(entry)
    doc["rules"] = [
        {"if": str(r.condition), "then": [str(a) for a in r.actions]}
        | ({"note": r.note} if r.note else {})
        for r in model.rules
    ]
    doc["assets"] = [
        {"name": a.name}
        | ({"inclusion": str(a.inclusion)} if a.inclusion is not None else {})
        | ({"includes": list(a.includes)} if a.includes else {})
        | ({"excludes": list(a.excludes)} if a.excludes else {})
        for a in model.assets
    ]
    doc["constraints"] = [str(e) for e in model.extra_constraints]
    if model.pidl_constraints:
        doc["pidl_constraints"] = list(model.pidl_constraints)
    doc["checks"] = {name: str(e) for name, e in model.checks}
    return doc
