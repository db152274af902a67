import random

from pidl import State, explore, is_model
from pidl.analysis import (
    analyze,
    build_state_graph,
    build_witness_model,
    check_incompleteness,
    check_inconsistency,
    check_redundancy,
    check_rule_confluence,
    check_user_confluence,
    dumps_stable,
    find_cycles,
    graph_to_json,
    to_dot,
)
from pidl.exprs import parse_formula as f
from tests.conftest import make_spec
from tests.randspecs import oracle_explore, random_spec


class TestBuildGraph:
    def test_example4(self, example4):
        g = build_state_graph(explore(example4))
        assert len(g.vertices) == 3
        # Two transitions move between distinct states; the rule's no-op
        # repetition in the final state is kept as a self-edge.
        assert len([e for e in g.edges if e[0] != e[2]]) == 2
        assert len(g.edges) == 3
        assert g.initial == State.of("!A", "!B")

    def test_no_transitions(self):
        g = build_state_graph(explore(make_spec("A", ["A"])))
        assert len(g.vertices) == 1
        assert g.edges == ()

    def test_flipflop(self, flipflop):
        g = build_state_graph(explore(flipflop))
        assert len(g.vertices) == 2
        assert len(g.edges) == 2


class TestInconsistency:
    def test_example4_has_model(self, example4):
        result = explore(example4)
        g = build_state_graph(result)
        assert check_inconsistency(g, result) == []
        witness = build_witness_model(g, result)
        assert witness is not None
        assert is_model(witness, example4, g.vertices)

    def test_initial_state_contradicts_constraint(self):
        spec = make_spec("A", ["!A"], constraints=["A"])
        result = explore(spec)
        g = build_state_graph(result)
        assert check_inconsistency(g, result) == [(State.of("!A"), ())]
        assert build_witness_model(g, result) is None

    def test_reached_inconsistent_state_with_path(self):
        spec = make_spec(
            "AB", ["!A", "!B"], constraints=["!A || !B"], rules=[(1, "true", "A", "B")]
        )
        result = explore(spec)
        g = build_state_graph(result)
        assert check_inconsistency(g, result) == [(State.of("A", "B"), (1,))]


class TestIncompleteness:
    def test_true_is_never_missing(self, example4):
        result = explore(example4)
        g = build_state_graph(result)
        assert check_incompleteness(g, result, f("true")) == []

    def test_example4_with_d(self, example4):
        result = explore(example4)
        g = build_state_graph(result)
        # Rule-terminal states are S_I and S_2; only S_I fails to entail D.
        assert check_incompleteness(g, result, f("D")) == [State.of("!A", "!B")]


class TestRedundancy:
    def test_two_identical_rules(self):
        spec = make_spec("AB", ["A"], rules=[(1, "A", "B"), (2, "A", "B")])
        g = build_state_graph(explore(spec))
        assert check_redundancy(g) == [
            (1, 2, State.of("A"), State.of("A", "B")),
            (1, 2, State.of("A", "B"), State.of("A", "B")),
        ]

    def test_example4_none(self, example4):
        g = build_state_graph(explore(example4))
        assert check_redundancy(g) == []


class TestCycles:
    def test_flipflop_cycle(self, flipflop):
        g = build_state_graph(explore(flipflop))
        assert find_cycles(g) == [(State.of("A"), State.of("!A"), State.of("A"))]

    def test_example4_acyclic(self, example4):
        g = build_state_graph(explore(example4))
        assert find_cycles(g) == []

    def test_self_loop_is_not_a_cycle(self):
        spec = make_spec("A", ["A"], rules=[(1, "A", "A")])
        g = build_state_graph(explore(spec))
        assert len(g.edges) == 1
        assert find_cycles(g) == []

    def test_witness_cap(self):
        spec = make_spec(
            "ABC",
            ["!A", "!B", "!C"],
            rules=[
                (1, "!A", "A"),
                (2, "A", "!A"),
                (3, "!B", "B"),
                (4, "B", "!B"),
            ],
        )
        g = build_state_graph(explore(spec))
        assert find_cycles(g, cap=1) != []
        assert len(find_cycles(g, cap=1)) == 1


class TestRuleConfluence:
    def test_example4_confluent(self, example4):
        v = check_rule_confluence(build_state_graph(explore(example4)))
        assert v.confluent
        assert v.non_terminating == ()

    def test_two_divergent_rules(self):
        spec = make_spec(
            "ABC",
            ["A", "!B", "!C"],
            rules=[(1, "A && !B && !C", "B"), (2, "A && !B && !C", "C")],
        )
        v = check_rule_confluence(build_state_graph(explore(spec)))
        assert not v.confluent
        state, t1, t2 = v.counterexample
        assert state == State.of("A", "!B", "!C")
        assert {t1, t2} == {State.of("A", "B", "!C"), State.of("A", "!B", "C")}

    def test_flipflop_non_terminating(self, flipflop):
        v = check_rule_confluence(build_state_graph(explore(flipflop)))
        assert v.confluent  # vacuously: no rule-terminal state is reachable
        assert set(v.non_terminating) == {State.of("A"), State.of("!A")}

    def test_terminal_state_is_its_own_next(self, example4):
        g = build_state_graph(explore(example4))
        from pidl.analysis import _next_rule_terminal

        next_rt = _next_rule_terminal(g)
        for v in g.rule_terminals():
            assert next_rt[v] == {v}


class TestUserConfluence:
    def test_example4_confluent(self, example4):
        assert check_user_confluence(build_state_graph(explore(example4))).confluent

    def test_order_dependent_outcome(self):
        spec = make_spec(
            "ABC",
            ["!A", "!B", "!C"],
            user=[(1, "!A", "A"), (2, "!B", "B")],
            rules=[(3, "A && !B && !C", "C")],
        )
        v = check_user_confluence(build_state_graph(explore(spec)))
        assert not v.confluent
        u, _s1, t1, _s2, t2 = v.counterexample
        assert u == (1, 2)
        assert {t1, t2} == {State.of("A", "B", "C"), State.of("A", "B", "!C")}

    def test_commuting_independent_decisions(self):
        spec = make_spec(
            "AB",
            ["!A", "!B"],
            user=[(1, "!A", "A"), (2, "!B", "B")],
        )
        assert check_user_confluence(build_state_graph(explore(spec))).confluent


class TestExports:
    def test_dot_shape(self, example4):
        result = explore(example4)
        g = build_state_graph(result)
        dot = to_dot(g)
        assert dot.count(" -> ") == 3
        assert 'label="A B D"' in dot
        assert "style=dashed" in dot  # the user edge

    def test_json_stable(self, example4):
        result = explore(example4)
        g, report = analyze(result)
        doc1 = dumps_stable(graph_to_json(g, result, report))
        result2 = explore(example4)
        g2, report2 = analyze(result2)
        doc2 = dumps_stable(graph_to_json(g2, result2, report2))
        assert doc1 == doc2
        assert '"vertices"' in doc1 and '"anomalies"' in doc1


class TestCheckerOracleEquivalence:
    """Every checker verdict must match a brute-force reimplementation
    working directly on the enumeration-built graph."""

    def check(self, spec):
        result = explore(spec)
        g = build_state_graph(result)
        want = oracle_explore(spec)

        assert set(s for s, _ in check_inconsistency(g, result)) == want.inconsistent
        assert g.rule_terminals() == want.rule_terminals(spec)
        assert set(check_redundancy(g)) == want.redundant_pairs(spec)
        assert bool(find_cycles(g)) == want.has_cycle()

        from pidl.analysis import _next_rule_terminal

        next_rt = _next_rule_terminal(g)
        for s in g.vertices:
            assert next_rt[s] == want.next_rule_terminal(spec, s), s
        rc = check_rule_confluence(g)
        assert rc.confluent == all(
            len(want.next_rule_terminal(spec, s)) <= 1 for s in want.states
        )
        uc = check_user_confluence(g)
        per_set = want.user_set_terminals(spec)
        assert uc.confluent == all(len(ts) <= 1 for ts in per_set.values())

        phi = f("v0")
        brute = {
            s
            for s in want.rule_terminals(spec)
            if not __import__("pidl").entails_oracle(s, spec.constraints, phi)
        }
        assert set(check_incompleteness(g, result, phi)) == brute

    def test_seeded_batch(self):
        rng = random.Random(811)
        for _ in range(120):
            self.check(random_spec(rng, max_vars=6, max_transitions=6))
