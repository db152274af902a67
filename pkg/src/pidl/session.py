"""Interactive configuration sessions.

The engine loop: the user takes a decision, all applicable rules propagate
(lowest index first, deterministically) until the state is rule-terminal,
contradicts the constraints, or revisits a state.  Retraction is a pure
rollback to the snapshot taken before the decision (later decisions are
undone with it).  Between requests the current state is rule-terminal and
consistent unless the session is flagged inconsistent or non-terminating.
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass
from typing import Optional

from .core import Specification, State
from .dopler.anomalies import describe_state
from .dopler.model import DoplerModel
from .dopler.translate import Translation, build_translation, no_var, option_var, yes_var
from .formula import Atom, Not
from .saturation import StateOracle


class SessionError(ValueError):
    """Rejected session operation; ``code`` keys the wire-format error."""

    def __init__(self, code: str, message: str, detail: Optional[dict] = None):
        super().__init__(message)
        self.code = code
        self.detail = detail or {}


@dataclass(frozen=True)
class PropagationStep:
    rule_index: int
    before: State
    after: State


@dataclass(frozen=True)
class PropagationTrace:
    steps: tuple[PropagationStep, ...]
    terminal: bool
    diagnostics: tuple[dict, ...] = ()


@dataclass(frozen=True)
class HistoryEntry:
    decision: str
    value: str
    transition_index: int
    snapshot: State  # state before the decision was taken
    trace: PropagationTrace


@dataclass(frozen=True)
class ActionInfo:
    decision: str
    value: str
    index: int


class ConfigSpace:
    """Uniform view of a translated model or a raw specification: named user
    actions on top of user-transition indexes."""

    def __init__(self, spec: Specification, translation: Optional[Translation] = None):
        self.spec = spec
        self.translation = translation

    @classmethod
    def for_model(cls, model: DoplerModel) -> "ConfigSpace":
        tr = build_translation(model)
        return cls(tr.spec, tr)

    def actions(self) -> list[ActionInfo]:
        if self.translation is not None:
            return [
                ActionInfo(d, v, i)
                for (d, v), i in self.translation.user_action_of.items()
            ]
        return [
            ActionInfo(str(t.index), "", t.index) for t in self.spec.of_kind("user")
        ]

    def action_index(self, decision: str, value) -> int:
        if self.translation is not None:
            token = _value_token(value)
            index = self.translation.user_action_of.get((decision, token))
            if index is None:
                if not any(d == decision for d, _ in self.translation.user_action_of):
                    raise SessionError("unknown_decision", f"no decision {decision!r}")
                raise SessionError(
                    "unknown_value", f"{value!r} is not a value of {decision!r}"
                )
            return index
        try:
            index = int(decision)
        except (TypeError, ValueError):
            raise SessionError("unknown_decision", f"no user transition {decision!r}")
        if not any(t.index == index for t in self.spec.of_kind("user")):
            raise SessionError("unknown_decision", f"no user transition {decision!r}")
        return index

    def action_of_index(self, index: int) -> tuple[str, str]:
        if self.translation is not None:
            return self.translation.action_of_index[index]
        return (str(index), "")


def _value_token(value) -> str:
    if value is True:
        return "true"
    if value is False:
        return "false"
    return str(value)


class Session:
    def __init__(self, space: ConfigSpace, session_id: Optional[str] = None):
        self.id = session_id or uuid.uuid4().hex
        self.model_id: Optional[str] = None
        self.space = space
        self.oracle = StateOracle(space.spec)
        self.history: list[HistoryEntry] = []
        self.status = "ready"
        self.diagnostics: tuple[dict, ...] = ()
        self.last_trace: Optional[PropagationTrace] = None
        self.current, trace = self._propagate(space.spec.initial)
        if trace.diagnostics:
            self._absorb(trace)
            if self.status == "non_terminating":
                self.current = space.spec.initial
        self.last_trace = trace

    # -- engine loop

    def _propagate(self, state: State) -> tuple[State, PropagationTrace]:
        steps: list[PropagationStep] = []
        seen = {state}
        rules = self.space.spec.of_kind("rule")
        while True:
            if self.oracle.inconsistent(state):
                return state, PropagationTrace(
                    tuple(steps), False, (self._inconsistency_diagnostic(state),)
                )
            fired = self.oracle.fired(state)
            nxt = None
            for t in rules:
                if t.index in fired:
                    candidate = self.oracle.apply(state, t.index)
                    if candidate != state:
                        nxt = (t.index, candidate)
                        break
            if nxt is None:
                return state, PropagationTrace(tuple(steps), True)
            index, candidate = nxt
            steps.append(PropagationStep(index, state, candidate))
            if candidate in seen:
                diag = {
                    "kind": "non_terminating",
                    "message": "rule propagation revisited a state",
                    "rule_index": index,
                }
                return candidate, PropagationTrace(tuple(steps), False, (diag,))
            seen.add(candidate)
            state = candidate

    def _inconsistency_diagnostic(self, state: State) -> dict:
        diag = {"kind": "inconsistent", "message": "state contradicts the constraints"}
        tr = self.space.translation
        if tr is not None:
            culprits = []
            for kind, payload in self.oracle.inconsistency_sources(state):
                if kind == "constraint":
                    origin = tr.constraint_origins[payload]
                    if str(origin) not in culprits:
                        culprits.append(str(origin))
            diag["culprits"] = culprits
            conflicted = [
                name
                for name, value in describe_state(state, tr).items()
                if "simultaneously" in value
            ]
            if conflicted:
                diag["decisions"] = conflicted
        return diag

    def _absorb(self, trace: PropagationTrace) -> None:
        kinds = {d["kind"] for d in trace.diagnostics}
        if "inconsistent" in kinds:
            self.status = "inconsistent"
        elif "non_terminating" in kinds:
            self.status = "non_terminating"
        else:
            self.status = "ready"
        self.diagnostics = trace.diagnostics

    # -- operations

    def _run_decision(self, decision: str, value) -> tuple[State, PropagationTrace, int]:
        if self.status != "ready":
            raise SessionError(
                "session_" + self.status,
                f"session is {self.status}; retract a decision first",
            )
        index = self.space.action_index(decision, value)
        fired = self.oracle.fired(self.current)
        if index not in fired:
            raise SessionError(*self._why_not_applicable(decision, index))
        after_user = self.oracle.apply(self.current, index)
        final, trace = self._propagate(after_user)
        if any(d["kind"] == "non_terminating" for d in trace.diagnostics):
            raise SessionError(
                "non_terminating",
                "rule propagation does not terminate; decision rolled back",
                {"trace": trace_to_json(trace)},
            )
        return final, trace, index

    def _why_not_applicable(self, decision: str, index: int) -> tuple[str, str]:
        tr = self.space.translation
        if tr is not None:
            sign = {l.variable.name: l.positive for l in self.current}
            d = tr.model.decision(decision)
            taken = (
                any(sign.get(option_var(d.name, o)) for o in d.options)
                if d.is_enum()
                else sign.get(yes_var(d.name)) or sign.get(no_var(d.name))
            )
            if taken:
                return ("already_taken", f"decision {decision!r} is already taken")
            if not self.oracle.entails(self.current, Atom(f"Visible_{decision}")):
                return ("not_visible", f"decision {decision!r} is not visible")
        return ("not_applicable", f"decision {decision!r} is not applicable here")

    def take_decision(self, decision: str, value) -> PropagationTrace:
        final, trace, index = self._run_decision(decision, value)
        name, token = self.space.action_of_index(index)
        self.history.append(
            HistoryEntry(name, token, index, self.current, trace)
        )
        self.current = final
        self._absorb(trace)
        self.last_trace = trace
        # invariant: a ready session always awaits input in a rule-terminal,
        # consistent state
        assert self.status != "ready" or self.oracle.rule_terminal(self.current)
        return trace

    def whatif(self, decision: str, value) -> PropagationTrace:
        """The trace the decision would produce; session state untouched."""
        _final, trace, _index = self._run_decision(decision, value)
        return trace

    def retract_decision(self, decision: str) -> State:
        for k, entry in enumerate(self.history):
            if entry.decision == decision:
                self.current = entry.snapshot
                del self.history[k:]
                self.status = "ready"
                self.diagnostics = ()
                self.last_trace = None
                return self.current
        raise SessionError("not_taken", f"decision {decision!r} is not in the history")

    # -- views

    def visible_untaken(self) -> list[ActionInfo]:
        if self.status != "ready":
            return []
        fired = self.oracle.fired(self.current)
        return sorted(
            (a for a in self.space.actions() if a.index in fired),
            key=lambda a: a.index,
        )

    def view(self, overlay: Optional[dict] = None) -> dict:
        doc: dict = {
            "session_id": self.id,
            "status": self.status,
            "diagnostics": list(self.diagnostics),
            "state": sorted(str(l) for l in self.current),
            "history": [
                {"decision": e.decision, "value": e.value, "transition_index": e.transition_index}
                for e in self.history
            ],
            "last_trace": None if self.last_trace is None else trace_to_json(self.last_trace),
        }
        open_actions = self.visible_untaken()
        tr = self.space.translation
        if tr is not None:
            assignment = describe_state(self.current, tr)
            by_decision: dict[str, list[str]] = {}
            for a in open_actions:
                by_decision.setdefault(a.decision, []).append(a.value)
            doc["decisions"] = [
                {
                    "name": d.name,
                    "kind": d.kind,
                    "value": assignment[d.name],
                    "taken": assignment[d.name] not in ("unset",),
                    "visible": d.name in by_decision,
                    "allowed": by_decision.get(d.name, []),
                    "options": list(d.options),
                }
                for d in tr.model.decisions
            ]
            doc["visible_decisions"] = sorted(by_decision)
            doc["assets"] = [
                {"name": a, "status": self._asset_status(a)}
                for a in tr.asset_names()
            ]
        else:
            doc["decisions"] = [
                {"name": a.decision, "kind": "transition", "taken": False,
                 "visible": True, "allowed": [], "options": []}
                for a in open_actions
            ]
            doc["visible_decisions"] = [a.decision for a in open_actions]
            doc["assets"] = []
        if overlay is not None:
            doc["anomaly_overlay"] = overlay
        return doc

    def _asset_status(self, asset: str) -> str:
        if self.status != "ready":
            return "unknown"
        if self.oracle.entails(self.current, Atom(asset)):
            return "included"
        if self.oracle.entails(self.current, Not(Atom(asset))):
            return "excluded"
        return "open"


def session_snapshot(session: Session) -> dict:
    """Replayable snapshot: the decision history is enough because the
    propagation policy is deterministic."""
    return {
        "session_id": session.id,
        "model_id": session.model_id,
        "history": [
            {"decision": e.decision, "value": e.value} for e in session.history
        ],
    }


def restore_session(space: ConfigSpace, snapshot: dict) -> Session:
    session = Session(space, session_id=snapshot.get("session_id"))
    session.model_id = snapshot.get("model_id")
    for entry in snapshot.get("history", []):
        value = entry["value"]
        if value in ("true", "false"):
            value = value == "true"
        session.take_decision(entry["decision"], value)
    return session


def trace_to_json(trace: PropagationTrace) -> dict:
    return {
        "steps": [
            {
                "rule_index": s.rule_index,
                "before": sorted(str(l) for l in s.before),
                "after": sorted(str(l) for l in s.after),
            }
            for s in trace.steps
        ],
        "terminal": trace.terminal,
        "diagnostics": list(trace.diagnostics),
    }
