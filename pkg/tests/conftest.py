import pytest

from pidl import Specification, State, Transition, Variable
from pidl.exprs import parse_formula


def make_spec(vars_, init, constraints=(), user=(), rules=()):
    """Compact spec builder: formulas as grammar strings, effects as literal
    strings, transitions as (index, formula, effect...) tuples."""
    transitions = []
    for kind, entries in (("user", user), ("rule", rules)):
        for index, cond, *effect in entries:
            transitions.append(
                Transition(
                    index=index,
                    kind=kind,
                    condition=parse_formula(cond),
                    effect=State.of(*effect),
                )
            )
    return Specification(
        variables=frozenset(Variable(v) for v in vars_),
        initial=State.of(*init),
        constraints=tuple(parse_formula(c) for c in constraints),
        transitions=tuple(transitions),
    )


@pytest.fixture
def example4():
    """Four variables, one user transition, one rule transition, one
    constraint; induces exactly three states."""
    return make_spec(
        "ABCD",
        ["!A", "!B"],
        constraints=["!B || C"],
        user=[(1, "!A", "A", "B")],
        rules=[(2, "C", "D")],
    )


@pytest.fixture
def flipflop():
    """Two rules toggling a single variable forever: the canonical cyclic,
    non-terminating rule system."""
    return make_spec(
        "A",
        ["A"],
        rules=[(1, "A", "!A"), (2, "!A", "A")],
    )
