"""Verification engine and interactive simulator for rule-based
configuration models: transition semantics, labeled-clause saturation,
state-graph analyses, a configuration-model frontend, a CLI and a session
service."""

from .core import (
    Clause,
    Interpretation,
    Literal,
    OracleScaleError,
    SpecError,
    Specification,
    State,
    Transition,
    Variable,
    applicable_transitions,
    cnf,
    entails_oracle,
    is_model,
    is_rule_terminal,
    lit,
    state_consistent_oracle,
    update,
)
from .saturation import (
    ExplorationResult,
    ExploreTimeout,
    LabeledClause,
    StateSaturation,
    clause_less,
    explore,
    is_redundant,
    path_less,
    saturate_state,
)

__all__ = [
    "Clause",
    "ExplorationResult",
    "ExploreTimeout",
    "Interpretation",
    "LabeledClause",
    "Literal",
    "OracleScaleError",
    "SpecError",
    "Specification",
    "State",
    "StateSaturation",
    "Transition",
    "Variable",
    "applicable_transitions",
    "clause_less",
    "cnf",
    "entails_oracle",
    "explore",
    "is_model",
    "is_redundant",
    "is_rule_terminal",
    "lit",
    "path_less",
    "saturate_state",
    "state_consistent_oracle",
    "update",
]
