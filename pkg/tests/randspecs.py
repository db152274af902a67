"""Seeded random specifications plus a brute-force explorer.

The explorer works directly on the truth-table oracle and never touches the
saturation engine, so the two can be compared as independent
implementations of the same semantics.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import pidl.formula as fm
from pidl import Specification, State, Transition, Variable, update
from pidl.core import TruthTable


def random_formula(rng: random.Random, names, depth: int) -> fm.Formula:
    r = rng.random()
    if depth <= 0 or r < 0.40:
        atom = fm.Atom(rng.choice(names))
        return fm.Not(atom) if rng.random() < 0.5 else atom
    if r < 0.60:
        return fm.And((random_formula(rng, names, depth - 1), random_formula(rng, names, depth - 1)))
    if r < 0.80:
        return fm.Or((random_formula(rng, names, depth - 1), random_formula(rng, names, depth - 1)))
    if r < 0.90:
        return fm.Implies(random_formula(rng, names, depth - 1), random_formula(rng, names, depth - 1))
    return fm.Not(random_formula(rng, names, depth - 1))


def random_literals(rng: random.Random, names, k: int) -> State:
    chosen = rng.sample(names, min(k, len(names)))
    return State.of(*[n if rng.random() < 0.5 else f"!{n}" for n in chosen])


def random_spec(
    rng: random.Random,
    max_vars: int = 8,
    max_transitions: int = 8,
    max_constraints: int = 4,
) -> Specification:
    n = rng.randint(2, max_vars)
    names = [f"v{i}" for i in range(n)]
    init = random_literals(rng, names, rng.randint(0, n))
    constraints = tuple(
        random_formula(rng, names, 2) for _ in range(rng.randint(0, max_constraints))
    )
    transitions = []
    for index in range(1, rng.randint(0, max_transitions) + 1):
        transitions.append(
            Transition(
                index=index,
                kind="rule" if rng.random() < 0.6 else "user",
                condition=random_formula(rng, names, rng.randint(0, 2)),
                effect=random_literals(rng, names, rng.randint(1, 3)),
            )
        )
    return Specification(
        variables=frozenset(Variable(n) for n in names),
        initial=init,
        constraints=constraints,
        transitions=tuple(transitions),
    )


def random_cyclic_spec(rng: random.Random, max_vars: int = 6) -> Specification:
    """Specs whose rules flip assigned variables back and forth, guaranteeing
    cycles in the induced graph."""
    n = rng.randint(2, max_vars)
    names = [f"v{i}" for i in range(n)]
    init = State.of(*[n_ if rng.random() < 0.5 else f"!{n_}" for n_ in names])
    transitions = []
    index = 1
    for name in rng.sample(names, rng.randint(1, max(1, n // 2))):
        transitions.append(
            Transition(index, "rule", fm.Atom(name), State.of(f"!{name}"))
        )
        transitions.append(
            Transition(index + 1, "rule", fm.Not(fm.Atom(name)), State.of(name))
        )
        index += 2
    for _ in range(rng.randint(0, 3)):
        transitions.append(
            Transition(
                index,
                "rule" if rng.random() < 0.7 else "user",
                random_formula(rng, names, 1),
                random_literals(rng, names, rng.randint(1, 2)),
            )
        )
        index += 1
    return Specification(
        variables=frozenset(Variable(n_) for n_ in names),
        initial=init,
        constraints=(),
        transitions=tuple(transitions),
    )


@dataclass
class OracleExploration:
    states: set
    inconsistent: set
    edges: set
    bottom_tags: dict

    def rule_terminals(self, spec: Specification) -> set:
        rules = {t.index: t for t in spec.of_kind("rule")}
        out = set()
        for s in self.states - self.inconsistent:
            if all(
                update(s, rules[i].effect) == s
                for i in self.bottom_tags[s]
                if i in rules
            ):
                out.add(s)
        return out

    def next_rule_terminal(self, spec: Specification, origin) -> set:
        rule_idx = {t.index for t in spec.of_kind("rule")}
        adj = {}
        for s, i, t in self.edges:
            if i in rule_idx:
                adj.setdefault(s, set()).add(t)
        terminals = self.rule_terminals(spec)
        seen, work = {origin}, [origin]
        while work:
            v = work.pop()
            for w in adj.get(v, ()):
                if w not in seen:
                    seen.add(w)
                    work.append(w)
        return seen & terminals

    def has_cycle(self) -> bool:
        adj = {}
        for s, _, t in self.edges:
            if s != t:
                adj.setdefault(s, set()).add(t)
        color = {}

        def dfs(v):
            color[v] = 1
            for w in adj.get(v, ()):
                c = color.get(w)
                if c == 1:
                    return True
                if c is None and dfs(w):
                    return True
            color[v] = 2
            return False

        return any(color.get(v) is None and dfs(v) for v in self.states)

    def redundant_pairs(self, spec: Specification) -> set:
        rule_idx = {t.index for t in spec.of_kind("rule")}
        by_pair = {}
        for s, i, t in self.edges:
            if i in rule_idx:
                by_pair.setdefault((s, t), set()).add(i)
        out = set()
        for (s, t), idxs in by_pair.items():
            for a in idxs:
                for b in idxs:
                    if a < b:
                        out.add((a, b, s, t))
        return out

    def user_set_terminals(self, spec: Specification) -> dict:
        """User-index sets witnessed along paths, with the union of next
        rule-terminal states over all states carrying each set."""
        user_idx = {t.index for t in spec.of_kind("user")}
        out_edges = {}
        for s, i, t in self.edges:
            out_edges.setdefault(s, []).append((i, t))
        seen = {(spec.initial, frozenset())}
        work = [(spec.initial, frozenset())]
        while work:
            s, u = work.pop()
            for i, t in out_edges.get(s, ()):
                nu = u | {i} if i in user_idx else u
                if (t, nu) not in seen:
                    seen.add((t, nu))
                    work.append((t, nu))
        per_set = {}
        for s, u in seen:
            per_set.setdefault(u, set()).update(self.next_rule_terminal(spec, s))
        return per_set


def oracle_explore(spec: Specification) -> OracleExploration:
    """Reachability by direct enumeration semantics (no clauses anywhere)."""
    tt = TruthTable(spec.variables)
    cmask = tt.full
    for c in spec.constraints:
        cmask &= tt.formula_mask(c)
    cond = {t.index: tt.formula_mask(t.condition) for t in spec.transitions}
    rules = spec.of_kind("rule")
    users = spec.of_kind("user")

    states, inconsistent, edges, tags = set(), set(), set(), {}
    frontier = [spec.initial]
    while frontier:
        s = frontier.pop()
        if s in states:
            continue
        states.add(s)
        m = tt.state_mask(s) & cmask
        if m == 0:
            inconsistent.add(s)
            tags[s] = frozenset(t.index for t in spec.transitions)
            continue
        fired = frozenset(t.index for t in spec.transitions if m & ~cond[t.index] == 0)
        tags[s] = fired
        succs = []
        terminal = True
        for t in rules:
            if t.index not in fired:
                continue
            nxt = update(s, t.effect)
            edges.add((s, t.index, nxt))
            if nxt != s:
                terminal = False
                succs.append(nxt)
        if terminal:
            for t in users:
                if t.index not in fired:
                    continue
                nxt = update(s, t.effect)
                edges.add((s, t.index, nxt))
                if nxt != s:
                    succs.append(nxt)
        frontier.extend(succs)
    return OracleExploration(states, inconsistent, edges, tags)
