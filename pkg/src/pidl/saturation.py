"""Labeled-clause saturation: the production decision procedure.

Clauses are labeled with the state they belong to, the path of transition
indexes that reached the state, and a tag that is either the wildcard ``*``
(general clauses of the state) or a transition index (clauses descending
from that transition's negated condition).  Saturating one state decides,
by ordered resolution with eager unit propagation and subsumption, whether
the state contradicts the constraints (a ``*``-tagged empty clause) and
which transition conditions it entails (an ``i``-tagged empty clause).
Exploration then repeatedly fires entailed transitions, visiting each
distinct state once under its least path.

Internally variables are interned to integers (``start`` smallest, the rest
lexicographic) and a literal is ``2*v`` (positive) or ``2*v + 1`` (negative),
so the integer order on literal codes *is* the literal ordering and the
maximal literal of a clause is ``max(clause)``.
"""

from __future__ import annotations

import itertools
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from . import formula as fm
from .core import (
    Clause,
    Literal,
    Specification,
    State,
    Variable,
    entails_oracle,
    START,
)

Path = tuple[int, ...]
Tag = Optional[int]  # None is the wildcard tag
STAR: Tag = None


class ExploreTimeout(RuntimeError):
    """Raised when exploration exceeds its deadline."""


@dataclass(frozen=True)
class LabeledClause:
    state: State
    path: Path
    tag: Tag
    clause: Clause

    def dump(self) -> str:
        state = "{" + " ".join(sorted(str(l) for l in self.state)) + "}"
        path = "[" + ",".join(str(i) for i in self.path) + "]"
        tag = "*" if self.tag is None else str(self.tag)
        return f"{state} | {path} | {tag} | {self.clause}"


@dataclass(frozen=True)
class StateSaturation:
    """Saturation of a single state: the kept general clauses plus the empty
    clauses that were derived (``clauses`` holds the ``*`` closure and any
    tagged empty clause; other tagged intermediates are recomputed on
    demand)."""

    state: State
    path: Path
    clauses: frozenset[LabeledClause]
    bottom_star: bool
    bottom_tags: frozenset[int]


@dataclass
class ExplorationResult:
    """All reachable states with their saturations, the fired edges, and the
    least witnessed path per state.  ``states`` is in canonical discovery
    order (shortest path first, lexicographic tie-break)."""

    states: tuple[State, ...]
    saturations: dict[State, StateSaturation]
    edges: tuple[tuple[State, int, State], ...]
    canonical_paths: dict[State, Path]
    stopped_on_inconsistency: bool = False
    engine: "Engine" = field(repr=False, default=None)


# ---------------------------------------------------------------------------
# Orderings
# ---------------------------------------------------------------------------


def path_less(a: Sequence[int], b: Sequence[int]) -> bool:
    """Shorter paths first, lexicographic among equal lengths."""
    if len(a) != len(b):
        return len(a) < len(b)
    return tuple(a) < tuple(b)


def variable_rank(order: Iterable[str]) -> dict[str, int]:
    """Rank map for an explicit variable order (``start`` is forced smallest)."""
    names = [n for n in order if n != START]
    return {START: 0, **{n: i + 1 for i, n in enumerate(names)}}


def spec_rank(spec: Specification) -> dict[str, int]:
    return {v.name: i for i, v in enumerate(spec.ordered_variables())}


def _encode_lit(l: Literal, rank: Mapping[str, int]) -> int:
    v = rank[l.variable.name]
    return 2 * v if l.positive else 2 * v + 1


def _encode_clause(c: Clause, rank: Mapping[str, int]) -> frozenset[int]:
    return frozenset(_encode_lit(l, rank) for l in c.literals)


def _multiset_less(a: frozenset[int], b: frozenset[int]) -> bool:
    """Multiset extension of the literal order, specialised to sets."""
    if a == b:
        return False
    return max(a ^ b) in b


def clause_less(a: LabeledClause, b: LabeledClause, rank: Mapping[str, int]) -> bool:
    """Strict partial order on labeled clauses: path first, then (for equal
    paths and a compatible tag on the left) the multiset clause order."""
    if path_less(a.path, b.path):
        return True
    if a.path != b.path:
        return False
    if not (a.tag is STAR or a.tag == b.tag):
        return False
    return _multiset_less(_encode_clause(a.clause, rank), _encode_clause(b.clause, rank))


def is_redundant(
    c: LabeledClause, n: Iterable[LabeledClause], rank: Mapping[str, int]
) -> bool:
    """True iff some clauses of ``n`` with ``c``'s state, sharing one path and
    each smaller than ``c``, jointly entail ``c``'s clause."""
    by_path: dict[Path, list[LabeledClause]] = {}
    for d in n:
        if d.state == c.state and clause_less(d, c, rank):
            by_path.setdefault(d.path, []).append(d)
    for group in by_path.values():
        premises = [d.clause.to_formula() for d in group]
        if entails_oracle(State(frozenset()), premises, c.clause.to_formula()):
            return True
    return False


# ---------------------------------------------------------------------------
# Compiled specification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _CompiledTransition:
    index: int
    kind: str
    neg_condition: tuple[frozenset[int], ...]  # cnf of the negated condition
    effect: frozenset[int]


class _CompiledSpec:
    def __init__(self, spec: Specification):
        self.spec = spec
        self.names = tuple(v.name for v in spec.ordered_variables())
        self.rank = {n: i for i, n in enumerate(self.names)}
        self.start_lit = 0  # positive literal of ``start``
        self.init = frozenset(_encode_lit(l, self.rank) for l in spec.initial)
        self.constraint_clauses: list[tuple[int, frozenset[int]]] = []
        for ci, f in enumerate(spec.constraints):
            for cl in fm.clausify(f):
                self.constraint_clauses.append(
                    (ci, frozenset(self._code(n, pos) for n, pos in cl))
                )
        self.transitions: list[_CompiledTransition] = []
        for t in sorted(spec.transitions, key=lambda t: t.index):
            neg = tuple(
                frozenset(self._code(n, pos) for n, pos in cl)
                for cl in fm.clausify(fm.Not(t.condition))
            )
            eff = frozenset(_encode_lit(l, self.rank) for l in t.effect)
            self.transitions.append(_CompiledTransition(t.index, t.kind, neg, eff))
        self.all_indexes = frozenset(t.index for t in self.transitions)

        self._lit_cache: dict[int, Literal] = {}
        self._state_cache: dict[frozenset[int], State] = {}

    def _code(self, name: str, positive: bool) -> int:
        v = self.rank[name]
        return 2 * v if positive else 2 * v + 1

    def compile_query(self, phi) -> tuple[frozenset[int], ...]:
        """CNF of the negation of a query formula, for tagged entailment runs."""
        return tuple(
            frozenset(self._code(n, pos) for n, pos in cl)
            for cl in fm.clausify(fm.Not(phi))
        )

    def decode_lit(self, code: int) -> Literal:
        lit = self._lit_cache.get(code)
        if lit is None:
            lit = self._lit_cache[code] = Literal(
                Variable(self.names[code >> 1]), code % 2 == 0
            )
        return lit

    def decode_state(self, key: frozenset[int]) -> State:
        state = self._state_cache.get(key)
        if state is None:
            state = self._state_cache[key] = State(
                frozenset(self.decode_lit(c) for c in key)
            )
        return state

    def decode_clause(self, key: frozenset[int]) -> Clause:
        return Clause(frozenset(self.decode_lit(c) for c in key))

    def update(self, s: frozenset[int], e: frozenset[int]) -> frozenset[int]:
        return frozenset(l for l in s if (l ^ 1) not in e) | e


# ---------------------------------------------------------------------------
# Saturation of one state
# ---------------------------------------------------------------------------

_START_CLAUSE = frozenset((0,))


class _StarSat:
    """Given-clause saturation of the general (``*``) partition: the start
    clause, the state literals and the constraint clauses."""

    def __init__(self, track_provenance: bool = True):
        self.active: set[frozenset[int]] = set()
        self.by_max: dict[int, list[frozenset[int]]] = {}
        self.occ: dict[int, set[frozenset[int]]] = {}
        self.units: dict[int, int] = {}  # variable -> literal code
        self.prov: dict[frozenset[int], tuple] = {}
        self.bottom: Optional[frozenset[int]] = None
        self._units_q: deque = deque()
        self._other_q: deque = deque()
        self._track = track_provenance

    # -- bookkeeping

    def _record(self, clause, kind, source, parents):
        if self._track and clause not in self.prov:
            self.prov[clause] = (kind, source, parents)

    def _activate(self, clause: frozenset[int]) -> None:
        self.active.add(clause)
        if clause:
            self.by_max.setdefault(max(clause), []).append(clause)
            for l in clause:
                self.occ.setdefault(l, set()).add(clause)

    def _deactivate(self, clause: frozenset[int]) -> None:
        self.active.discard(clause)
        for l in clause:
            s = self.occ.get(l)
            if s is not None:
                s.discard(clause)

    def enqueue(self, clause: frozenset[int], kind: str, source, parents: tuple) -> None:
        self._record(clause, kind, source, parents)
        (self._units_q if len(clause) <= 1 else self._other_q).append(clause)

    def add_input(self, clause: frozenset[int], kind: str, source) -> None:
        parents = () if kind == "start" else (_START_CLAUSE,)
        self.enqueue(clause, kind, source, parents)

    # -- main loop

    def run(self) -> bool:
        """Process until empty; returns True when the empty clause appears."""
        while self._units_q or self._other_q:
            clause = (self._units_q or self._other_q).popleft()
            if self._process(clause):
                return True
        return False

    def _process(self, clause: frozenset[int]) -> bool:
        simplified, parents = self._unit_simplify(clause)
        if simplified is None:  # satisfied by a unit
            return False
        if parents:
            self.enqueue(simplified, "simplify", None, (clause, *parents))
            return False
        if not simplified:
            self.bottom = clause
            return True
        if _is_tautology(simplified):
            return False
        if simplified in self.active or self._subsumed(simplified):
            return False
        self._back_subsume(simplified)
        self._activate(simplified)
        if len(simplified) == 1:
            self._propagate_unit(simplified)
        self._resolve_against(simplified)
        return False

    def _unit_simplify(self, clause):
        removed = []
        lits = None
        for l in clause:
            u = self.units.get(l >> 1)
            if u is None:
                continue
            if u == l:
                return None, ()  # clause already entailed by the unit
            if lits is None:
                lits = set(clause)
            lits.discard(l)
            removed.append(frozenset((u,)))
        if removed:
            return frozenset(lits), tuple(removed)
        return clause, ()

    def _subsumed(self, clause: frozenset[int]) -> bool:
        seen: set[frozenset[int]] = set()
        for l in clause:
            for d in self.occ.get(l, ()):
                if d in seen or len(d) > len(clause):
                    continue
                seen.add(d)
                if d <= clause:
                    return True
        return False

    def _back_subsume(self, clause: frozenset[int]) -> None:
        candidates: Optional[set[frozenset[int]]] = None
        for l in clause:
            occ = self.occ.get(l, set())
            candidates = set(occ) if candidates is None else candidates & occ
            if not candidates:
                return
        for d in candidates or ():
            if d != clause and clause < d:
                self._deactivate(d)

    def _propagate_unit(self, unit: frozenset[int]) -> None:
        (l,) = unit
        self.units[l >> 1] = l
        for d in list(self.occ.get(l, ())):
            if d != unit:
                self._deactivate(d)
        for d in list(self.occ.get(l ^ 1, ())):
            self._deactivate(d)
            self.enqueue(d - {l ^ 1}, "simplify", None, (d, unit))

    def _resolve_against(self, clause: frozenset[int]) -> None:
        top = max(clause)
        for d in list(self.by_max.get(top ^ 1, ())):
            if d in self.active:
                resolvent = (clause - {top}) | (d - {top ^ 1})
                self.enqueue(resolvent, "resolve", None, (clause, d))

    # -- provenance

    def input_sources(self, clause: frozenset[int]) -> list[tuple]:
        """Input sources in the derivation ancestry of ``clause``."""
        out, seen, work = [], set(), [clause]
        while work:
            c = work.pop()
            if c in seen:
                continue
            seen.add(c)
            kind, source, parents = self.prov[c]
            if kind not in ("resolve", "simplify"):
                out.append((kind, source))
            work.extend(parents)
        return out

    def ancestry_reaches_start(self, clause: frozenset[int]) -> bool:
        if clause == _START_CLAUSE:
            return True
        return any(k == "start" for k, _ in self.input_sources(clause))


def _is_tautology(clause: frozenset[int]) -> bool:
    return any(l ^ 1 in clause for l in clause)


class _TagRun:
    """Saturation of one tagged partition against a saturated ``*`` closure.

    Tags never mix, so each transition's negated-condition clauses are closed
    against the general clauses in isolation; the general partition stays
    untouched."""

    def __init__(self, star: _StarSat):
        self.star = star
        self.active: set[frozenset[int]] = set()
        self.by_max: dict[int, list[frozenset[int]]] = {}
        self.occ: dict[int, set[frozenset[int]]] = {}
        self.units: dict[int, int] = {}
        self._q: deque = deque()

    def run(self, inputs: Iterable[frozenset[int]]) -> bool:
        for c in inputs:
            self._q.append(c)
        while self._q:
            if self._process(self._q.popleft()):
                return True
        return False

    def _unit_of(self, var: int) -> Optional[int]:
        u = self.star.units.get(var)
        return u if u is not None else self.units.get(var)

    def _process(self, clause: frozenset[int]) -> bool:
        lits = set(clause)
        for l in clause:
            u = self._unit_of(l >> 1)
            if u == l:
                return False
            if u is not None:
                lits.discard(l)
        clause = frozenset(lits)
        if not clause:
            return True
        if _is_tautology(clause) or clause in self.active:
            return False
        if self._subsumed(clause):
            return False
        self._activate(clause)
        if len(clause) == 1:
            (l,) = clause
            self.units[l >> 1] = l
            for d in list(self.occ.get(l, ())):
                if d != clause:
                    self._deactivate(d)
            for d in list(self.occ.get(l ^ 1, ())):
                self._deactivate(d)
                self._q.append(d - {l ^ 1})
        top = max(clause)
        for d in self.star.by_max.get(top ^ 1, ()):
            if d in self.star.active:
                self._q.append((clause - {top}) | (d - {top ^ 1}))
        for d in list(self.by_max.get(top ^ 1, ())):
            if d in self.active:
                self._q.append((clause - {top}) | (d - {top ^ 1}))
        return False

    def _activate(self, clause: frozenset[int]) -> None:
        self.active.add(clause)
        self.by_max.setdefault(max(clause), []).append(clause)
        for l in clause:
            self.occ.setdefault(l, set()).add(clause)

    def _deactivate(self, clause: frozenset[int]) -> None:
        self.active.discard(clause)
        for l in clause:
            s = self.occ.get(l)
            if s is not None:
                s.discard(clause)

    def _subsumed(self, clause: frozenset[int]) -> bool:
        seen: set[frozenset[int]] = set()
        for l in clause:
            for d in itertools.chain(self.star.occ.get(l, ()), self.occ.get(l, ())):
                if d in seen or len(d) > len(clause):
                    continue
                seen.add(d)
                if (d in self.star.active or d in self.active) and d <= clause:
                    return True
        return False


@dataclass
class _StateCore:
    """Compact per-state saturation kept by the engine."""

    key: frozenset[int]
    bottom_star: bool
    bottom_tags: frozenset[int]
    star: _StarSat
    core_sources: tuple = ()  # input sources of the refutation when inconsistent


def _saturate_key(cs: _CompiledSpec, key: frozenset[int], track_provenance=True) -> _StateCore:
    star = _StarSat(track_provenance=track_provenance)
    star.add_input(_START_CLAUSE, "start", None)
    for l in sorted(key):
        star.add_input(frozenset((l,)), "state-lit", l)
    for ci, cl in cs.constraint_clauses:
        star.add_input(cl, "constraint", ci)
    if star.run():
        sources = tuple(star.input_sources(star.bottom)) if track_provenance else ()
        return _StateCore(key, True, cs.all_indexes, star, sources)
    tags = set()
    for t in cs.transitions:
        if _TagRun(star).run(t.neg_condition):
            tags.add(t.index)
    return _StateCore(key, False, frozenset(tags), star)


def _core_entails(star: _StarSat, neg_cnf: Sequence[frozenset[int]]) -> bool:
    return _TagRun(star).run(neg_cnf)


# ---------------------------------------------------------------------------
# Exploration
# ---------------------------------------------------------------------------


class Engine:
    """Internal handle onto a finished exploration: compiled spec, per-state
    cores, and tagged entailment queries against stored closures."""

    def __init__(self, cs: _CompiledSpec):
        self.cs = cs
        self.cores: dict[frozenset[int], _StateCore] = {}
        self.key_of: dict[State, frozenset[int]] = {}

    def entails(self, state: State, phi) -> bool:
        """Does the state plus the constraints entail ``phi``?  Decided by a
        tagged saturation of the negated query against the stored closure."""
        core = self.cores[self.key_of[state]]
        if core.bottom_star:
            return True
        return _core_entails(core.star, self.cs.compile_query(phi))

    def inconsistency_sources(self, state: State) -> tuple:
        return self.cores[self.key_of[state]].core_sources

    def rule_terminal(self, state: State) -> bool:
        core = self.cores[self.key_of[state]]
        if core.bottom_star:
            return False
        for t in self.cs.transitions:
            if t.kind == "rule" and t.index in core.bottom_tags:
                if self.cs.update(core.key, t.effect) != core.key:
                    return False
        return True

    def witness_valuation(self, state: State) -> frozenset[str]:
        """A total valuation satisfying the state and the constraints, read
        off the saturated clause set by making the maximal literal of each
        yet-unsatisfied max-positive clause true, in clause order."""
        core = self.cores[self.key_of[state]]
        if core.bottom_star:
            raise ValueError("no satisfying valuation for an inconsistent state")
        clauses = sorted(core.star.active, key=lambda c: tuple(sorted(c, reverse=True)))
        true_vars: set[int] = set()

        def satisfied(cl: frozenset[int]) -> bool:
            return any(
                ((l & 1) == 0 and (l >> 1) in true_vars)
                or ((l & 1) == 1 and (l >> 1) not in true_vars)
                for l in cl
            )

        for cl in clauses:
            if cl and not satisfied(cl):
                top = max(cl)
                assert top & 1 == 0, "saturation left an unproductive clause"
                true_vars.add(top >> 1)
        assert all(satisfied(cl) for cl in clauses)
        return frozenset(self.cs.names[v] for v in true_vars)


class StateOracle:
    """On-demand saturation of individual states of one specification,
    memoized per state.  This is what the interactive engine drives: it asks
    which transitions fire in the current state without exploring the whole
    graph."""

    def __init__(self, spec: Specification):
        self.spec = spec
        self.cs = _CompiledSpec(spec)
        self._cores: dict[frozenset[int], _StateCore] = {}

    def _key(self, state: State) -> frozenset[int]:
        return frozenset(_encode_lit(l, self.cs.rank) for l in state)

    def _core(self, state: State) -> _StateCore:
        key = self._key(state)
        core = self._cores.get(key)
        if core is None:
            core = self._cores[key] = _saturate_key(self.cs, key)
        return core

    def inconsistent(self, state: State) -> bool:
        return self._core(state).bottom_star

    def fired(self, state: State) -> frozenset[int]:
        """Transition indexes whose condition the state entails; empty for an
        inconsistent state (nothing may fire there)."""
        core = self._core(state)
        return frozenset() if core.bottom_star else core.bottom_tags

    def rule_terminal(self, state: State) -> bool:
        core = self._core(state)
        if core.bottom_star:
            return False
        key = self._key(state)
        return all(
            self.cs.update(key, t.effect) == key
            for t in self.cs.transitions
            if t.kind == "rule" and t.index in core.bottom_tags
        )

    def entails(self, state: State, phi) -> bool:
        core = self._core(state)
        if core.bottom_star:
            return True
        return _core_entails(core.star, self.cs.compile_query(phi))

    def inconsistency_sources(self, state: State) -> tuple:
        return self._core(state).core_sources

    def apply(self, state: State, index: int) -> State:
        t = self.spec.transition(index)
        key = self.cs.update(self._key(state), frozenset(
            _encode_lit(l, self.cs.rank) for l in t.effect
        ))
        return self.cs.decode_state(key)


def saturate_state(
    start: LabeledClause, spec: Specification, check_provenance: bool = False
) -> StateSaturation:
    """Saturate one state from its start clause.

    ``bottom_star`` is set iff the state contradicts the constraints;
    ``bottom_tags`` holds every transition index whose condition is entailed
    (all indexes for an inconsistent state, where every condition is
    vacuously entailed)."""
    if start.tag is not STAR or start.clause != Clause.of(START):
        raise ValueError("not a start clause")
    cs = _CompiledSpec(spec)
    key = frozenset(_encode_lit(l, cs.rank) for l in start.state)
    core = _saturate_key(cs, key)
    if check_provenance:
        for c in core.star.active:
            assert core.star.ancestry_reaches_start(c), "derivation lost its start clause"
    return _public_saturation(cs, core, start.path)


def _public_saturation(cs: _CompiledSpec, core: _StateCore, path: Path) -> StateSaturation:
    state = cs.decode_state(core.key)
    clauses = {
        LabeledClause(state, path, STAR, cs.decode_clause(c)) for c in core.star.active
    }
    if core.bottom_star:
        clauses.add(LabeledClause(state, path, STAR, Clause(frozenset())))
    else:
        for i in sorted(core.bottom_tags):
            clauses.add(LabeledClause(state, path, i, Clause(frozenset())))
    return StateSaturation(state, path, frozenset(clauses), core.bottom_star, core.bottom_tags)


def explore(
    spec: Specification,
    *,
    deadline: Optional[float] = None,
    stop_on_inconsistency: bool = False,
) -> ExplorationResult:
    """Exhaustive state exploration.

    Breadth-first over path length with lexicographic tie-break, so each
    state is saturated exactly once under its least witnessed path and the
    result is identical across runs.  Rule transitions fire whenever their
    condition is entailed; user transitions fire only in rule-terminal
    states.  Self-edges (no-op updates) are recorded but not re-enqueued.
    Inconsistent states are recorded as dead ends.
    """
    cs = _CompiledSpec(spec)
    engine = Engine(cs)
    visited: dict[frozenset[int], Path] = {}
    order: list[frozenset[int]] = []
    edges: set[tuple[frozenset[int], int, frozenset[int]]] = set()
    current: dict[frozenset[int], Path] = {cs.init: ()}
    stopped = False

    while current and not stopped:
        batch = sorted(current.items(), key=lambda kv: kv[1])
        for key, path in batch:
            if deadline is not None and time.monotonic() > deadline:
                raise ExploreTimeout("exploration exceeded its time limit")
            visited[key] = path
            order.append(key)
            engine.cores[key] = _saturate_key(cs, key)
            if stop_on_inconsistency and engine.cores[key].bottom_star:
                stopped = True
                break
        nxt: dict[frozenset[int], Path] = {}

        def propose(tkey: frozenset[int], path: Path) -> None:
            if tkey in visited:
                return
            best = nxt.get(tkey)
            if best is None or path < best:
                nxt[tkey] = path

        for key, path in batch:
            if key not in visited:
                continue
            core = engine.cores[key]
            if core.bottom_star:
                continue
            rule_changing = False
            for t in cs.transitions:
                if t.kind != "rule" or t.index not in core.bottom_tags:
                    continue
                tkey = cs.update(key, t.effect)
                edges.add((key, t.index, tkey))
                if tkey != key:
                    rule_changing = True
                    propose(tkey, path + (t.index,))
            if not rule_changing:
                for t in cs.transitions:
                    if t.kind != "user" or t.index not in core.bottom_tags:
                        continue
                    tkey = cs.update(key, t.effect)
                    edges.add((key, t.index, tkey))
                    if tkey != key:
                        propose(tkey, path + (t.index,))
        current = nxt

    states: list[State] = []
    sats: dict[State, StateSaturation] = {}
    paths: dict[State, Path] = {}
    pos = {key: i for i, key in enumerate(order)}
    for key in order:
        st = cs.decode_state(key)
        engine.key_of[st] = key
        states.append(st)
        sats[st] = _public_saturation(cs, engine.cores[key], visited[key])
        paths[st] = visited[key]
    edge_list = sorted(
        (e for e in edges if e[0] in pos and e[2] in pos),
        key=lambda e: (pos[e[0]], e[1], pos[e[2]]),
    )
    decoded_edges = tuple(
        (cs.decode_state(s), i, cs.decode_state(t)) for s, i, t in edge_list
    )
    return ExplorationResult(
        states=tuple(states),
        saturations=sats,
        edges=decoded_edges,
        canonical_paths=paths,
        stopped_on_inconsistency=stopped,
        engine=engine,
    )


def dump(result: ExplorationResult) -> str:
    """Debug dump: one labeled clause per line, canonically ordered."""
    lines = []
    for state in result.states:
        sat = result.saturations[state]
        lines.extend(
            sorted(
                lc.dump()
                for lc in sat.clauses
            )
        )
    return "\n".join(lines) + "\n"
