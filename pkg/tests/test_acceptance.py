"""Acceptance suite: one test per criterion, one PASS line per criterion.

Run with ``pytest tests/test_acceptance.py -v -s``.  The long 100-variable
benchmark block is opt-in via ``PIDL_LONG_BENCH=1``.
"""

import json
import os
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest
from click.testing import CliRunner

from pidl import (
    Clause,
    Interpretation,
    LabeledClause,
    State,
    Variable,
    applicable_transitions,
    clause_less,
    explore,
    is_model,
    is_redundant,
    is_rule_terminal,
    path_less,
    update,
)
from pidl.cli import _bench_one, main
from pidl.dopler import generate_random_model, model_seed
from pidl.dopler.translate import build_translation
from pidl.saturation import STAR, variable_rank
from tests.conftest import make_spec
from tests.randspecs import oracle_explore, random_cyclic_spec, random_spec

ROOT = Path(__file__).resolve().parent.parent
MODELS = ROOT / "models"


def report(name: str) -> None:
    print(f"[acceptance] {name}: PASS")


def lc(state, path, tag, *lits):
    return LabeledClause(State.of(*state), tuple(path), tag, Clause.of(*lits))


def test_worked_examples_reproduce_exactly(example4):
    started = time.monotonic()

    # update operator
    assert update(State.of("A", "B", "!C"), State.of("!B", "!C", "D")) == State.of(
        "A", "!B", "!C", "D"
    )

    # a rule transition application
    spec2 = make_spec("ABC", [], rules=[(1, "A && C", "B")])
    s = State.of("A", "!B", "C")
    fired = applicable_transitions(s, spec2, "rule")
    assert [t.index for t in fired] == [1]
    assert update(s, fired[0].effect) == State.of("A", "B", "C")

    # rule-terminality
    spec3 = make_spec(
        "ABCDE", [], rules=[(1, "A", "B", "!C"), (2, "!C", "D"), (3, "A && !D", "E")]
    )
    assert is_rule_terminal(State.of("A", "B", "!C", "D", "!E"), spec3)

    # exploration of the four-variable specification and its interpretations
    result = explore(example4)
    si, s1, s2 = State.of("!A", "!B"), State.of("A", "B"), State.of("A", "B", "D")
    assert set(result.states) == {si, s1, s2}
    good = Interpretation(
        {
            si: frozenset(),
            s1: frozenset({Variable("A"), Variable("B"), Variable("C")}),
            s2: frozenset({Variable(v) for v in "ABCD"}),
        }
    )
    bad = Interpretation(
        {
            si: frozenset(),
            s1: frozenset({Variable("A"), Variable("B")}),
            s2: frozenset({Variable(v) for v in "ABD"}),
        }
    )
    assert is_model(good, example4, result.states)
    assert not is_model(bad, example4, result.states)

    # path ordering
    assert path_less([3, 5, 2], [4, 9, 2, 1, 3])
    assert path_less([2, 9, 4, 2], [2, 9, 4, 5])

    # clause ordering
    rank = variable_rank(["A", "B"])
    assert clause_less(
        lc("", [3, 1, 6], STAR, "A", "B"), lc("A", [8, 2, 6, 1], STAR, "!B"), rank
    )
    assert clause_less(
        lc("", [3, 1, 6], STAR, "A", "B"), lc("", [3, 1, 6], STAR, "!B"), rank
    )

    # redundancy
    c = lc("", [5, 6, 9], STAR, "A", "B")
    assert is_redundant(c, [lc("", [2, 3], STAR, "A")], rank)
    assert is_redundant(c, [lc("", [5, 6, 9], STAR, "B")], rank)

    elapsed = time.monotonic() - started
    assert elapsed < 1.0, f"worked examples took {elapsed:.2f}s"
    report(f"worked examples (in {elapsed:.2f}s)")


def test_calculus_oracle_equivalence_1000_specs():
    started = time.monotonic()
    rng = random.Random(0xD0B1E5)
    n = 1000
    for k in range(n):
        spec = random_spec(rng, max_vars=12, max_transitions=8, max_constraints=6)
        got = explore(spec)
        want = oracle_explore(spec)
        assert set(got.states) == want.states, f"spec {k}: reachable sets differ"
        got_bad = {s for s in got.states if got.saturations[s].bottom_star}
        assert got_bad == want.inconsistent, f"spec {k}: inconsistency verdicts differ"
        for s in got.states:
            assert (
                got.saturations[s].bottom_tags == want.bottom_tags[s]
            ), f"spec {k}: bottom tags differ at {s}"
        assert set(got.edges) == want.edges, f"spec {k}: edges differ"
    elapsed = time.monotonic() - started
    assert elapsed < 300, f"equivalence run took {elapsed:.1f}s"
    report(f"calculus vs oracle on {n} random specs (in {elapsed:.1f}s)")


def test_termination_on_cyclic_systems(flipflop):
    result = explore(flipflop)
    assert len(result.states) == 2
    rng = random.Random(0xC1C1E)
    for k in range(100):
        spec = random_cyclic_spec(rng)
        result = explore(spec)
        assert result.states  # returned, therefore terminated
    report("termination on the flip-flop fixture and 100 cyclic specs")


def test_steelplant_anomaly_suite():
    r = CliRunner().invoke(main, ["check", str(MODELS / "steelplant.json")])
    assert r.exit_code == 1, r.output
    counts = {}
    for line in r.output.splitlines():
        parts = line.split(": ")
        if len(parts) == 2 and parts[1].strip().isdigit():
            counts[parts[0]] = int(parts[1])
    assert counts["inconsistent"] > 0
    assert counts["asset-conflicts"] > 0
    assert counts["incompleteness"] > 0
    assert counts["redundant-pairs"] > 0
    assert counts["cycles"] > 0
    assert "user-confluent: no" in r.output
    # the published per-class counts of the original industrial run are not
    # reproducible from the prose description; class coverage is the bar.
    report(
        "steel-plant anomaly suite (six classes: "
        f"{counts['inconsistent']} inconsistent, {counts['asset-conflicts']} asset conflicts, "
        f"{counts['incompleteness']} incompleteness, {counts['redundant-pairs']} redundant, "
        f"{counts['cycles']} cycles, order dependence found)"
    )


def test_random_model_experiment_20_vars():
    rows = [_bench_one((20, 1, k, 60.0)) for k in range(1, 21)]
    model = generate_random_model(20, model_seed(1, 1))
    assert len(model.rules) == 30 and len(model.pidl_constraints) == 20
    inconsistent = sum(1 for _, _, _, outcome in rows if outcome == "inconsistent")
    slowest = max(elapsed for _, _, elapsed, _ in rows)
    assert all(outcome != "timeout" for *_, outcome in rows)
    assert slowest < 60, f"slowest model took {slowest:.1f}s"
    assert inconsistent >= 12, f"only {inconsistent}/20 inconsistent"
    report(
        f"random-model experiment: {inconsistent}/20 inconsistent, "
        f"slowest {slowest:.2f}s"
    )


@pytest.mark.skipif(
    not os.environ.get("PIDL_LONG_BENCH"), reason="set PIDL_LONG_BENCH=1 to run"
)
def test_random_model_experiment_100_vars_long():
    rows = [_bench_one((100, 1, k, 720.0)) for k in range(1, 21)]
    outcomes = [outcome for *_, outcome in rows]
    assert all(o in ("inconsistent", "timeout") or "/" in o for o in outcomes)
    report(f"long benchmark outcomes: {outcomes}")


def _proc(args, hashseed):
    return subprocess.run(
        [sys.executable, "-m", "pidl.cli", *map(str, args)],
        capture_output=True,
        text=True,
        env={
            "PATH": "/usr/bin:/bin",
            "PYTHONHASHSEED": hashseed,
            "PYTHONPATH": str(ROOT / "src"),
        },
    ).stdout


def test_cli_determinism_across_runs_and_jobs(tmp_path):
    seeds = list(range(10))
    for seed in seeds:
        a = _proc(
            ["bench", "--vars", 5, "--count", 4, "--seed", seed, "--omit-times", "--jobs", 1],
            hashseed=str(100 + seed),
        )
        b = _proc(
            ["bench", "--vars", 5, "--count", 4, "--seed", seed, "--omit-times", "--jobs", 2],
            hashseed=str(7 + seed),
        )
        assert a == b and a, f"bench differs for seed {seed}"
        dir_a, dir_b = tmp_path / f"a{seed}", tmp_path / f"b{seed}"
        CliRunner().invoke(
            main, ["gen", "--vars", "5", "--count", "2", "--seed", str(seed), "--out", str(dir_a)]
        )
        CliRunner().invoke(
            main, ["gen", "--vars", "5", "--count", "2", "--seed", str(seed), "--out", str(dir_b)]
        )
        for k in (1, 2):
            assert (dir_a / f"rnd_{k}.json").read_bytes() == (
                dir_b / f"rnd_{k}.json"
            ).read_bytes()
    for args in (
        ["check", str(MODELS / "steelplant.json")],
        ["check", str(MODELS / "example4.json"), "--format", "json"],
        ["graph", str(MODELS / "steelplant.json"), "--format", "json"],
        ["graph", str(MODELS / "example4.json")],
    ):
        a = _proc(args, hashseed="11")
        b = _proc(args, hashseed="3131")
        assert a == b and a, f"{args[0]} output varies across processes"
    report("determinism of check/graph/gen/bench across runs, jobs and hash seeds")


def test_translation_invariants_200_models():
    started = time.monotonic()
    checked = 0
    for seed in range(200):
        n = 4 + (seed % 5)
        model = generate_random_model(n, model_seed(0xBEEF, seed))
        tr = build_translation(model)
        assert all(not l.positive for l in tr.spec.initial)
        result = explore(tr.spec)
        for state in result.states:
            sign = {l.variable.name: l.positive for l in state}
            for d in model.decisions:
                assert not (
                    sign.get(f"{d.name}_Yes") and sign.get(f"{d.name}_No")
                ), f"seed {seed}: {d.name} is both yes and no in {state}"
        checked += len(result.states)
    elapsed = time.monotonic() - started
    report(
        f"translation invariants over 200 models / {checked} states (in {elapsed:.1f}s)"
    )
