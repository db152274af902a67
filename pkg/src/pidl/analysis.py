"""State-graph construction and the anomaly checkers.

The graph's vertices are the reachable states, its labeled edges the fired
transitions.  All checkers are read-only over the immutable graph and
terminate on every input; verdicts are exact, witness enumeration for
cycles is capped.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import Interpretation, State, Variable
from .formula import Formula
from .saturation import ExplorationResult, Path

CYCLE_WITNESS_CAP = 100


@dataclass(frozen=True)
class StateGraph:
    vertices: tuple[State, ...]  # canonical discovery order
    edges: tuple[tuple[State, int, State], ...]
    initial: State
    inconsistent: frozenset[State]
    user_indexes: frozenset[int]

    def __post_init__(self):
        known = set(self.vertices)
        if self.initial not in known:
            raise ValueError("initial state is not a vertex")
        for s, _, t in self.edges:
            if s not in known or t not in known:
                raise ValueError("edge endpoint is not a vertex")

    def position(self) -> dict[State, int]:
        return {s: i for i, s in enumerate(self.vertices)}

    def is_user_edge(self, index: int) -> bool:
        return index in self.user_indexes

    def rule_terminal(self, vertex: State) -> bool:
        """Consistent and every fired rule leaves the state unchanged."""
        if vertex in self.inconsistent:
            return False
        return all(
            s != vertex or t == vertex
            for s, i, t in self.edges
            if not self.is_user_edge(i)
        )

    def rule_terminals(self) -> frozenset[State]:
        changing = {
            s
            for s, i, t in self.edges
            if not self.is_user_edge(i) and s != t
        }
        return frozenset(
            v for v in self.vertices if v not in self.inconsistent and v not in changing
        )


@dataclass(frozen=True)
class ConfluenceVerdict:
    confluent: bool
    counterexample: Optional[tuple] = None
    non_terminating: tuple[State, ...] = ()


@dataclass(frozen=True)
class AnomalyReport:
    inconsistent_states: tuple[tuple[State, Path], ...]
    incompleteness_witnesses: tuple[tuple[Formula, State], ...]
    redundant_pairs: tuple[tuple[int, int, State, State], ...]
    cycles: tuple[tuple[State, ...], ...]
    rule_confluence: ConfluenceVerdict
    user_confluence: ConfluenceVerdict

    def clean(self) -> bool:
        return not (
            self.inconsistent_states
            or self.incompleteness_witnesses
            or self.redundant_pairs
            or self.cycles
            or not self.rule_confluence.confluent
            or not self.user_confluence.confluent
            or self.rule_confluence.non_terminating
        )


def build_state_graph(result: ExplorationResult) -> StateGraph:
    """Graph with exactly the explored states and fired edges."""
    spec = result.engine.cs.spec
    user_idx = frozenset(t.index for t in spec.of_kind("user"))
    inconsistent = frozenset(
        s for s in result.states if result.saturations[s].bottom_star
    )
    return StateGraph(
        vertices=result.states,
        edges=result.edges,
        initial=result.states[0],
        inconsistent=inconsistent,
        user_indexes=user_idx,
    )


def check_inconsistency(
    graph: StateGraph, result: ExplorationResult
) -> list[tuple[State, Path]]:
    """All states whose saturation derived the general empty clause, with
    their canonical witness paths.  Empty iff the specification has a model."""
    return [
        (s, result.canonical_paths[s]) for s in graph.vertices if s in graph.inconsistent
    ]


def build_witness_model(
    graph: StateGraph, result: ExplorationResult
) -> Optional[Interpretation]:
    """A model of the specification when one exists: each state extended to a
    total valuation read off its saturated clause set."""
    if graph.inconsistent:
        return None
    assignment = {}
    for s in graph.vertices:
        names = result.engine.witness_valuation(s)
        assignment[s] = frozenset(Variable(n) for n in names)
    return Interpretation(assignment)


def check_incompleteness(
    graph: StateGraph, result: ExplorationResult, phi: Formula
) -> list[State]:
    """Rule-terminal consistent vertices that do not entail ``phi``."""
    return [
        s
        for s in graph.vertices
        if graph.rule_terminal(s) and not result.engine.entails(s, phi)
    ]


def check_redundancy(graph: StateGraph) -> list[tuple[int, int, State, State]]:
    """Unordered pairs of distinct rule transitions sharing source and target."""
    by_pair: dict[tuple[State, State], list[int]] = {}
    for s, i, t in graph.edges:
        if not graph.is_user_edge(i):
            by_pair.setdefault((s, t), []).append(i)
    pos = graph.position()
    found = []
    for (s, t), indexes in by_pair.items():
        indexes = sorted(set(indexes))
        for a in range(len(indexes)):
            for b in range(a + 1, len(indexes)):
                found.append((indexes[a], indexes[b], s, t))
    found.sort(key=lambda p: (pos[p[2]], pos[p[3]], p[0], p[1]))
    return found


def _int_adjacency(graph: StateGraph, rule_only: bool = False) -> dict[int, list[int]]:
    pos = graph.position()
    adj: dict[int, set[int]] = {i: set() for i in range(len(graph.vertices))}
    for s, i, t in graph.edges:
        if rule_only and graph.is_user_edge(i):
            continue
        adj[pos[s]].add(pos[t])
    return {v: sorted(ws) for v, ws in adj.items()}


def _has_cycle(adj: dict[int, list[int]]) -> bool:
    """Strongly connected component of size two or more (self-loops ignored)."""
    order: list[int] = []
    seen: set[int] = set()
    for root in sorted(adj):
        if root in seen:
            continue
        stack = [(root, iter(adj[root]))]
        seen.add(root)
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if w not in seen:
                    seen.add(w)
                    stack.append((w, iter(adj[w])))
                    advanced = True
                    break
            if not advanced:
                order.append(v)
                stack.pop()
    radj: dict[int, list[int]] = {v: [] for v in adj}
    for v, ws in adj.items():
        for w in ws:
            radj[w].append(v)
    seen.clear()
    for root in reversed(order):
        if root in seen:
            continue
        size = 0
        stack2 = [root]
        seen.add(root)
        while stack2:
            v = stack2.pop()
            size += 1
            for w in radj[v]:
                if w not in seen:
                    seen.add(w)
                    stack2.append(w)
        if size >= 2:
            return True
    return False


def _johnson_cycles(adj: dict[int, list[int]], cap: int) -> list[list[int]]:
    """Bounded simple-cycle enumeration (self-loops excluded by the caller)."""
    cycles: list[list[int]] = []
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * len(adj) + 1000))

    for s in sorted(adj):
        if len(cycles) >= cap:
            break
        sub = {v: [w for w in ws if w >= s] for v, ws in adj.items() if v >= s}
        blocked: set[int] = set()
        blist: dict[int, set[int]] = {}
        stack: list[int] = []

        def unblock(v: int) -> None:
            blocked.discard(v)
            for w in blist.pop(v, ()):  # noqa: B023
                if w in blocked:
                    unblock(w)

        def circuit(v: int) -> bool:
            found = False
            stack.append(v)
            blocked.add(v)
            for w in sub.get(v, ()):  # noqa: B023
                if len(cycles) >= cap:
                    break
                if w == s:
                    cycles.append(stack + [s])
                    found = True
                elif w not in blocked:
                    if circuit(w):
                        found = True
            if found:
                unblock(v)
            else:
                for w in sub.get(v, ()):  # noqa: B023
                    blist.setdefault(w, set()).add(v)
            stack.pop()
            return found

        if sub.get(s):
            circuit(s)
    return cycles


def find_cycles(graph: StateGraph, cap: int = CYCLE_WITNESS_CAP) -> list[tuple[State, ...]]:
    """Simple cycles of at least two edges; existence is decided exactly,
    at most ``cap`` witnesses are enumerated."""
    adj = {
        v: [w for w in ws if w != v] for v, ws in _int_adjacency(graph).items()
    }
    if not _has_cycle(adj):
        return []
    raw = _johnson_cycles(adj, cap)
    raw.sort(key=lambda c: (len(c), c))
    return [tuple(graph.vertices[i] for i in c) for c in raw]


def _next_rule_terminal(graph: StateGraph) -> dict[State, frozenset[State]]:
    """Rule-terminal vertices reachable from each vertex over rule edges."""
    pos = graph.position()
    adj = _int_adjacency(graph, rule_only=True)
    terminals = {pos[v] for v in graph.rule_terminals()}
    reach: dict[int, set[int]] = {v: set() for v in adj}
    radj: dict[int, list[int]] = {v: [] for v in adj}
    for v, ws in adj.items():
        for w in ws:
            if w != v:
                radj[w].append(v)
    for t in sorted(terminals):
        work = [t]
        seen = {t}
        reach[t].add(t)
        while work:
            v = work.pop()
            for u in radj[v]:
                if u not in seen:
                    seen.add(u)
                    reach[u].add(t)
                    work.append(u)
    return {
        v: frozenset(graph.vertices[t] for t in reach[pos[v]]) for v in graph.vertices
    }


def check_rule_confluence(graph: StateGraph) -> ConfluenceVerdict:
    """The next rule-terminal state reachable from each vertex must be
    unique.  Consistent vertices from which no rule-terminal state is
    reachable at all (rule cycles, or propagation that only runs into
    contradictions) are reported as non-terminating."""
    next_rt = _next_rule_terminal(graph)
    pos = graph.position()
    stuck = tuple(
        v
        for v in graph.vertices
        if v not in graph.inconsistent and not next_rt[v]
    )
    for v in graph.vertices:
        targets = sorted(next_rt[v], key=pos.get)
        if len(targets) > 1:
            return ConfluenceVerdict(False, (v, targets[0], targets[1]), stuck)
    return ConfluenceVerdict(True, None, stuck)


def check_user_confluence(graph: StateGraph) -> ConfluenceVerdict:
    """Paths from the initial state carrying the same set of user-transition
    indexes must lead to a unique next rule-terminal state."""
    next_rt = _next_rule_terminal(graph)
    pos = graph.position()
    witnessed: dict[State, set[frozenset[int]]] = {v: set() for v in graph.vertices}
    witnessed[graph.initial].add(frozenset())
    out: dict[State, list[tuple[int, State]]] = {v: [] for v in graph.vertices}
    for s, i, t in graph.edges:
        out[s].append((i, t))
    work = [graph.initial]
    while work:
        s = work.pop()
        for i, t in out[s]:
            added = False
            for u in list(witnessed[s]):
                nu = u | {i} if graph.is_user_edge(i) else u
                if nu not in witnessed[t]:
                    witnessed[t].add(nu)
                    added = True
            if added:
                work.append(t)
    per_set: dict[frozenset[int], dict[State, State]] = {}
    for v in graph.vertices:
        for u in witnessed[v]:
            for t in next_rt[v]:
                per_set.setdefault(u, {})[t] = v
    stuck = check_rule_confluence(graph).non_terminating
    for u in sorted(per_set, key=lambda u: (len(u), sorted(u))):
        targets = sorted(per_set[u], key=pos.get)
        if len(targets) > 1:
            witness = (
                tuple(sorted(u)),
                per_set[u][targets[0]],
                targets[0],
                per_set[u][targets[1]],
                targets[1],
            )
            return ConfluenceVerdict(False, witness, stuck)
    return ConfluenceVerdict(True, None, stuck)


def analyze(
    result: ExplorationResult,
    checks: Sequence[tuple[str, Formula]] = (),
    cycle_cap: int = CYCLE_WITNESS_CAP,
) -> tuple[StateGraph, AnomalyReport]:
    """Run every checker over one exploration."""
    graph = build_state_graph(result)
    incompleteness = []
    for _name, phi in checks:
        for s in check_incompleteness(graph, result, phi):
            incompleteness.append((phi, s))
    report = AnomalyReport(
        inconsistent_states=tuple(check_inconsistency(graph, result)),
        incompleteness_witnesses=tuple(incompleteness),
        redundant_pairs=tuple(check_redundancy(graph)),
        cycles=tuple(find_cycles(graph, cycle_cap)),
        rule_confluence=check_rule_confluence(graph),
        user_confluence=check_user_confluence(graph),
    )
    return graph, report


# ---------------------------------------------------------------------------
# Exports
# ---------------------------------------------------------------------------


def report_summary(graph: StateGraph, report: AnomalyReport) -> dict:
    return {
        "states": len(graph.vertices),
        "inconsistent": len(report.inconsistent_states),
        "incompleteness": len(report.incompleteness_witnesses),
        "redundant_pairs": len(report.redundant_pairs),
        "cycles": len(report.cycles),
        "rule_confluent": report.rule_confluence.confluent,
        "user_confluent": report.user_confluence.confluent,
        "non_terminating": len(report.rule_confluence.non_terminating),
    }


def _positive_label(state: State) -> str:
    pos = sorted(l.variable.name for l in state if l.positive)
    return " ".join(pos) if pos else "{}"


def to_dot(graph: StateGraph) -> str:
    """Graphviz export: nodes labeled with their positive literals, user
    edges dashed, inconsistent states marked.  Byte-stable."""
    pos = graph.position()
    terminals = graph.rule_terminals()
    lines = ["digraph states {", "  rankdir=LR;"]
    for i, v in enumerate(graph.vertices):
        attrs = [f'label="{_positive_label(v)}"']
        if v == graph.initial:
            attrs.append("shape=doublecircle")
        if v in graph.inconsistent:
            attrs.append('color="red"')
        elif v in terminals:
            attrs.append("peripheries=2" if v != graph.initial else "style=bold")
        lines.append(f"  s{i} [{', '.join(attrs)}];")
    for s, i, t in graph.edges:
        style = ", style=dashed" if graph.is_user_edge(i) else ""
        lines.append(f'  s{pos[s]} -> s{pos[t]} [label="{i}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def state_literals(state: State) -> list[str]:
    return sorted(str(l) for l in state)


def report_to_json(graph: StateGraph, report: AnomalyReport) -> dict:
    pos = graph.position()

    def vid(s: State) -> int:
        return pos[s]

    def conf(v: ConfluenceVerdict, user: bool) -> dict:
        out: dict = {"confluent": v.confluent}
        if v.counterexample is not None:
            if user:
                u, s1, t1, s2, t2 = v.counterexample
                out["counterexample"] = {
                    "user_indexes": list(u),
                    "witnesses": [
                        {"state": vid(s1), "terminal": vid(t1)},
                        {"state": vid(s2), "terminal": vid(t2)},
                    ],
                }
            else:
                s, t1, t2 = v.counterexample
                out["counterexample"] = {
                    "state": vid(s),
                    "terminals": [vid(t1), vid(t2)],
                }
        if not user:
            out["non_terminating"] = [vid(s) for s in v.non_terminating]
        return out

    return {
        "inconsistent": [
            {"state": vid(s), "path": list(p)} for s, p in report.inconsistent_states
        ],
        "incompleteness": [
            {"formula": str(phi), "state": vid(s)}
            for phi, s in report.incompleteness_witnesses
        ],
        "redundant_pairs": [
            {"first": i, "second": j, "source": vid(s), "target": vid(t)}
            for i, j, s, t in report.redundant_pairs
        ],
        "cycles": [[vid(s) for s in cycle] for cycle in report.cycles],
        "rule_confluence": conf(report.rule_confluence, user=False),
        "user_confluence": conf(report.user_confluence, user=True),
    }


def graph_to_json(graph: StateGraph, result: ExplorationResult, report: AnomalyReport) -> dict:
    """The full analysis document: vertices, edges, canonical paths, anomalies."""
    terminals = graph.rule_terminals()
    pos = graph.position()
    return {
        "vertices": [
            {
                "id": i,
                "literals": state_literals(v),
                "inconsistent": v in graph.inconsistent,
                "rule_terminal": v in terminals,
                "initial": v == graph.initial,
            }
            for i, v in enumerate(graph.vertices)
        ],
        "edges": [
            {
                "source": pos[s],
                "index": i,
                "target": pos[t],
                "kind": "user" if graph.is_user_edge(i) else "rule",
            }
            for s, i, t in graph.edges
        ],
        "canonical_paths": [
            list(result.canonical_paths[v]) for v in graph.vertices
        ],
        "anomalies": report_to_json(graph, report),
    }


def dumps_stable(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"
