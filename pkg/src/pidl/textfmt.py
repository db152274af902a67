"""Textual and JSON formats for raw specifications.

The textual format is line-oriented, with one section per component::

    # flip-flop
    vars: A
    init: A
    constraints:
    rules:
      1: A ~> !A
      2: !A ~> A

Formulas use the boolean expression grammar (no implication; write
``!a || b``).  Literals are ``name`` or ``!name``.  Parsing the printed form
of a parsed specification yields the identical specification.

The JSON form mirrors the sections: ``{"vars": [...], "init": [...],
"constraints": [...], "user": [...], "rules": [...]}`` with transitions as
``{"index": 1, "if": "...", "then": ["A", "!B"]}``.
"""

from __future__ import annotations

from typing import Any

from .core import Literal, Specification, State, Transition, Variable, lit
from .exprs import ExprError, parse_formula, print_formula


class SpecFormatError(ValueError):
    """Malformed specification file, with a line number when available."""


_SECTIONS = ("vars", "init", "constraints", "user", "rules")


def parse_spec_text(text: str) -> Specification:
    vars_: list[str] = []
    init: list[Literal] = []
    constraints: list = []
    transitions: list[Transition] = []
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(":")
        if head.strip() in _SECTIONS:
            section = head.strip()
            rest = rest.strip()
            if section == "vars" and rest:
                vars_.extend(rest.split())
            elif section == "init" and rest:
                init.extend(lit(tok) for tok in rest.split())
            elif rest:
                raise SpecFormatError(f"line {lineno}: section {section} takes no inline items")
            continue
        if section is None:
            raise SpecFormatError(f"line {lineno}: content before any section header")
        try:
            if section == "vars":
                vars_.extend(line.split())
            elif section == "init":
                init.extend(lit(tok) for tok in line.split())
            elif section == "constraints":
                constraints.append(parse_formula(line))
            elif section in ("user", "rules"):
                transitions.append(_parse_transition(line, section, lineno))
        except ExprError as e:
            raise SpecFormatError(f"line {lineno}: {e}") from e
    try:
        return Specification(
            variables=frozenset(Variable(n) for n in vars_),
            initial=State(frozenset(init)),
            constraints=tuple(constraints),
            transitions=tuple(transitions),
        )
    except ValueError as e:
        raise SpecFormatError(str(e)) from e


def _parse_transition(line: str, section: str, lineno: int) -> Transition:
    head, sep, rest = line.partition(":")
    if not sep or not head.strip().isdigit():
        raise SpecFormatError(f"line {lineno}: expected '<index>: <formula> ~> <literals>'")
    index = int(head.strip())
    cond_text, sep, eff_text = rest.partition("~>")
    if not sep:
        raise SpecFormatError(f"line {lineno}: missing '~>' in transition")
    condition = parse_formula(cond_text.strip())
    effect = State(frozenset(lit(tok) for tok in eff_text.split()))
    kind = "user" if section == "user" else "rule"
    return Transition(index=index, kind=kind, condition=condition, effect=effect)


def print_spec_text(spec: Specification) -> str:
    names = sorted(v.name for v in spec.variables if v.name != "start")
    lines = [f"vars: {' '.join(names)}"]
    lines.append(f"init: {' '.join(sorted(str(l) for l in spec.initial))}")
    lines.append("constraints:")
    lines.extend(f"  {print_formula(f)}" for f in spec.constraints)
    for section, kind in (("user", "user"), ("rules", "rule")):
        lines.append(f"{section}:")
        for t in spec.of_kind(kind):
            eff = " ".join(sorted(str(l) for l in t.effect))
            lines.append(f"  {t.index}: {print_formula(t.condition)} ~> {eff}".rstrip())
    return "\n".join(lines) + "\n"


def spec_from_json(doc: dict[str, Any]) -> Specification:
    try:
        transitions = []
        for section, kind in (("user", "user"), ("rules", "rule")):
            for entry in doc.get(section, []):
                transitions.append(
                    Transition(
                        index=int(entry["index"]),
                        kind=kind,
                        condition=parse_formula(entry["if"]),
                        effect=State(frozenset(lit(s) for s in entry.get("then", []))),
                    )
                )
        return Specification(
            variables=frozenset(Variable(n) for n in doc.get("vars", [])),
            initial=State(frozenset(lit(s) for s in doc.get("init", []))),
            constraints=tuple(parse_formula(s) for s in doc.get("constraints", [])),
            transitions=tuple(transitions),
        )
    except (KeyError, TypeError, ExprError, ValueError) as e:
        if isinstance(e, SpecFormatError):
            raise
        raise SpecFormatError(f"bad specification document: {e}") from e


def spec_to_json(spec: Specification) -> dict[str, Any]:
    def transitions(kind: str) -> list[dict[str, Any]]:
        return [
            {
                "index": t.index,
                "if": print_formula(t.condition),
                "then": sorted(str(l) for l in t.effect),
            }
            for t in spec.of_kind(kind)
        ]

    return {
        "vars": sorted(v.name for v in spec.variables if v.name != "start"),
        "init": sorted(str(l) for l in spec.initial),
        "constraints": [print_formula(f) for f in spec.constraints],
        "user": transitions("user"),
        "rules": transitions("rule"),
    }
