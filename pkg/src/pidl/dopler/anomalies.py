"""Model-level anomaly detection: translate, explore, run every checker,
and rewrite the findings in terms of decisions and assets.

Asset conflicts are inconsistent states whose refutation touches an
asset-derived constraint; the culprit constraints come out of the
saturation engine's derivation ancestry of the empty clause.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..analysis import AnomalyReport, StateGraph, analyze
from ..core import State
from ..saturation import ExplorationResult, explore
from .model import DoplerModel
from .translate import (
    Origin,
    Translation,
    build_translation,
    no_var,
    option_var,
    translate_expression,
    yes_var,
)


def describe_state(state: State, translation: Translation) -> dict[str, str]:
    """Decision assignments of a state, flagging contradictions such as an
    enumeration holding several options at once."""
    sign = {l.variable.name: l.positive for l in state}
    out: dict[str, str] = {}
    for d in translation.model.decisions:
        if d.is_enum():
            chosen = [o for o in d.options if sign.get(option_var(d.name, o))]
            if len(chosen) > 1:
                out[d.name] = "in {%s} simultaneously" % ", ".join(chosen)
            elif chosen:
                out[d.name] = chosen[0]
            else:
                out[d.name] = "unset"
        else:
            yes = sign.get(yes_var(d.name))
            no = sign.get(no_var(d.name))
            if yes and no:
                out[d.name] = "true and false simultaneously"
            elif yes:
                out[d.name] = "true"
            elif no:
                out[d.name] = "false"
            else:
                out[d.name] = "unset"
    return out


@dataclass(frozen=True)
class InconsistencyWitness:
    state: State
    path: tuple[int, ...]
    assignment: dict[str, str]
    culprits: tuple[Origin, ...]
    assets: tuple[str, ...]  # assets named by asset-derived culprits

    def is_asset_conflict(self) -> bool:
        return bool(self.assets)


@dataclass
class ModelAnalysis:
    """Everything one model analysis produces, decision-level views included."""

    translation: Translation
    result: ExplorationResult
    graph: StateGraph
    report: AnomalyReport
    inconsistency: tuple[InconsistencyWitness, ...]
    incompleteness: tuple[tuple[str, State, dict[str, str]], ...]

    @property
    def asset_conflicts(self) -> tuple[InconsistencyWitness, ...]:
        return tuple(w for w in self.inconsistency if w.is_asset_conflict())

    def summary(self) -> dict:
        from ..analysis import report_summary

        out = report_summary(self.graph, self.report)
        out["asset_conflicts"] = len(self.asset_conflicts)
        return out

    def anomalous(self) -> bool:
        s = self.summary()
        return bool(
            s["inconsistent"]
            or s["incompleteness"]
            or s["redundant_pairs"]
            or s["cycles"]
            or not s["rule_confluent"]
            or not s["user_confluent"]
            or s["non_terminating"]
        )


def _witness(state, path, translation, result) -> InconsistencyWitness:
    sources = result.engine.inconsistency_sources(state)
    culprits = []
    seen = set()
    for kind, payload in sources:
        if kind != "constraint":
            continue
        origin = translation.constraint_origins[payload]
        if origin not in seen:
            seen.add(origin)
            culprits.append(origin)
    assets = []
    for o in culprits:
        if o.involves_assets():
            for name in (o.subject, o.detail):
                if name in translation.asset_names() and name not in assets:
                    assets.append(name)
    return InconsistencyWitness(
        state=state,
        path=path,
        assignment=describe_state(state, translation),
        culprits=tuple(culprits),
        assets=tuple(assets),
    )


def detect_anomalies(
    model: DoplerModel,
    *,
    deadline: Optional[float] = None,
    cycle_cap: int = 100,
) -> ModelAnalysis:
    translation = build_translation(model)
    result = explore(translation.spec, deadline=deadline)
    checks = [
        (name, translate_expression(e, model)) for name, e in model.checks
    ]
    graph, report = analyze(result, checks, cycle_cap=cycle_cap)
    witnesses = tuple(
        _witness(state, path, translation, result)
        for state, path in report.inconsistent_states
    )
    check_names = {str(translate_expression(e, model)): name for name, e in model.checks}
    incompleteness = tuple(
        (check_names.get(str(phi), "?"), state, describe_state(state, translation))
        for phi, state in report.incompleteness_witnesses
    )
    return ModelAnalysis(
        translation=translation,
        result=result,
        graph=graph,
        report=report,
        inconsistency=witnesses,
        incompleteness=incompleteness,
    )
