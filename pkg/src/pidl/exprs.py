"""Recursive-descent parser for the boolean expression grammar.

    expr    := or
    or      := and ("||" and)*
    and     := unary ("&&" unary)*
    unary   := "!" unary | primary
    primary := "(" expr ")" | ident | ident "==" ident
             | "isTaken(" ident ")" | "containsOnly(" ident "," ident ")"
             | "true" | "false"

Actions use ``ident "=" ("true"|"false")`` or ``setValue(ident, ident)``.
The same grammar serves configuration-model expressions (where idents name
decisions) and raw propositional formulas (where the typed constructs are
rejected).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from . import formula as fm


class ExprError(ValueError):
    """Syntax or type error in an expression, with a column offset."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at column {pos + 1} in {text!r}")
        self.text = text
        self.pos = pos


# --- Expression AST -------------------------------------------------------


@dataclass(frozen=True)
class BoolAtom:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class NotE:
    arg: "Expression"

    def __str__(self) -> str:
        return f"!{_paren(self.arg, 3)}"


@dataclass(frozen=True)
class AndE:
    args: tuple["Expression", ...]

    def __str__(self) -> str:
        return " && ".join(_paren(a, 2) for a in self.args)


@dataclass(frozen=True)
class OrE:
    args: tuple["Expression", ...]

    def __str__(self) -> str:
        return " || ".join(_paren(a, 1) for a in self.args)


@dataclass(frozen=True)
class Equals:
    decision: str
    option: str

    def __str__(self) -> str:
        return f"{self.decision} == {self.option}"


@dataclass(frozen=True)
class IsTaken:
    name: str

    def __str__(self) -> str:
        return f"isTaken({self.name})"


@dataclass(frozen=True)
class ContainsOnly:
    decision: str
    option: str

    def __str__(self) -> str:
        return f"containsOnly({self.decision}, {self.option})"


@dataclass(frozen=True)
class ConstE:
    value: bool

    def __str__(self) -> str:
        return "true" if self.value else "false"


Expression = Union[BoolAtom, NotE, AndE, OrE, Equals, IsTaken, ContainsOnly, ConstE]

TRUE_E = ConstE(True)
FALSE_E = ConstE(False)


def _level(e: Expression) -> int:
    if isinstance(e, OrE) and len(e.args) > 1:
        return 1
    if isinstance(e, AndE) and len(e.args) > 1:
        return 2
    return 3


def _paren(e: Expression, ctx: int) -> str:
    s = str(e)
    return f"({s})" if _level(e) < ctx else s


# --- Actions ---------------------------------------------------------------


@dataclass(frozen=True)
class Assign:
    decision: str
    value: bool

    def __str__(self) -> str:
        return f"{self.decision} = {'true' if self.value else 'false'}"


@dataclass(frozen=True)
class SetValue:
    decision: str
    option: str

    def __str__(self) -> str:
        return f"setValue({self.decision}, {self.option})"


Action = Union[Assign, SetValue]


# --- Tokenizer / parser ----------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\|\||&&|==|[!()=,]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ExprError("unexpected character", text, pos)
        if m.lastgroup == "ident":
            tokens.append(("ident", m.group("ident"), m.start("ident")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, text, pos = self.next()
        if text != value:
            raise ExprError(f"expected {value!r}", self.text, pos)

    def at_end(self) -> bool:
        return self.i >= len(self.tokens)

    def fail(self, message: str):
        raise ExprError(message, self.text, self.peek()[2])

    # expr := or
    def expr(self) -> Expression:
        parts = [self.and_()]
        while self.peek()[1] == "||":
            self.next()
            parts.append(self.and_())
        return parts[0] if len(parts) == 1 else OrE(tuple(parts))

    def and_(self) -> Expression:
        parts = [self.unary()]
        while self.peek()[1] == "&&":
            self.next()
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else AndE(tuple(parts))

    def unary(self) -> Expression:
        if self.peek()[1] == "!":
            self.next()
            return NotE(self.unary())
        return self.primary()

    def primary(self) -> Expression:
        kind, text, pos = self.next()
        if text == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind != "ident":
            raise ExprError("expected an identifier, '(' or '!'", self.text, pos)
        if text == "true":
            return TRUE_E
        if text == "false":
            return FALSE_E
        if text == "isTaken":
            self.expect("(")
            name = self.ident()
            self.expect(")")
            return IsTaken(name)
        if text == "containsOnly":
            self.expect("(")
            decision = self.ident()
            self.expect(",")
            option = self.ident()
            self.expect(")")
            return ContainsOnly(decision, option)
        if self.peek()[1] == "==":
            self.next()
            return Equals(text, self.ident())
        return BoolAtom(text)

    def ident(self) -> str:
        kind, text, pos = self.next()
        if kind != "ident":
            raise ExprError("expected an identifier", self.text, pos)
        return text


def parse_expression(text: str) -> Expression:
    p = _Parser(text)
    e = p.expr()
    if not p.at_end():
        p.fail("trailing input")
    return e


def parse_action(text: str) -> Action:
    p = _Parser(text)
    kind, name, pos = p.next()
    if kind != "ident":
        raise ExprError("expected an identifier", text, pos)
    if name == "setValue":
        p.expect("(")
        decision = p.ident()
        p.expect(",")
        option = p.ident()
        p.expect(")")
        if not p.at_end():
            p.fail("trailing input")
        return SetValue(decision, option)
    p.expect("=")
    kind, value, pos = p.next()
    if value not in ("true", "false"):
        raise ExprError("expected 'true' or 'false'", text, pos)
    if not p.at_end():
        p.fail("trailing input")
    return Assign(name, value == "true")


def to_propositional(e: Expression, text: str = "") -> fm.Formula:
    """Read an expression as a plain propositional formula over its idents.

    The typed configuration-model constructs have no meaning here and are
    rejected."""
    if isinstance(e, BoolAtom):
        return fm.Atom(e.name)
    if isinstance(e, NotE):
        return fm.Not(to_propositional(e.arg, text))
    if isinstance(e, AndE):
        return fm.conj(to_propositional(a, text) for a in e.args)
    if isinstance(e, OrE):
        return fm.disj(to_propositional(a, text) for a in e.args)
    if isinstance(e, ConstE):
        return fm.TRUE if e.value else fm.FALSE
    raise ExprError(f"{type(e).__name__} is not allowed in a plain formula", text or str(e), 0)


def parse_formula(text: str) -> fm.Formula:
    """Parse a plain propositional formula in the expression grammar."""
    return to_propositional(parse_expression(text), text)


def print_formula(f: fm.Formula) -> str:
    """Render a formula in the surface grammar (implication is lowered)."""
    return str(f)
