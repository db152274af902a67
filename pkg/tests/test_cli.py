import json
import subprocess
import sys
from pathlib import Path

import pytest
from click.testing import CliRunner

from pidl.cli import main

ROOT = Path(__file__).resolve().parent.parent
MODELS = ROOT / "models"


def run_cli(*args):
    return CliRunner().invoke(main, [str(a) for a in args])


def run_proc(*args, hashseed="0"):
    """Real subprocess run, pinning PYTHONHASHSEED to probe hash-order bugs."""
    return subprocess.run(
        [sys.executable, "-m", "pidl.cli", *map(str, args)],
        capture_output=True,
        text=True,
        env={"PATH": "/usr/bin:/bin", "PYTHONHASHSEED": hashseed, "PYTHONPATH": str(ROOT / "src")},
    )


class TestCheck:
    def test_example4_clean(self):
        r = run_cli("check", MODELS / "example4.json")
        assert r.exit_code == 0
        assert "states: 3" in r.output
        assert "inconsistent: 0" in r.output

    def test_steelplant_anomalies(self):
        r = run_cli("check", MODELS / "steelplant.json")
        assert r.exit_code == 1
        for needle in (
            "inconsistent: ",
            "asset-conflicts: ",
            "incompleteness: ",
            "redundant-pairs: ",
            "cycles: ",
            "user-confluent: no",
        ):
            assert needle in r.output, needle
        # every anomaly class has a nonzero count
        for line in r.output.splitlines():
            for key in ("inconsistent:", "asset-conflicts:", "incompleteness:",
                        "redundant-pairs:", "cycles:"):
                if line.startswith(key + " "):
                    assert int(line.split()[-1]) > 0, line

    def test_missing_file_is_usage_error(self):
        r = run_cli("check", "no-such-file.json")
        assert r.exit_code == 2

    def test_bad_json_is_usage_error(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{nope")
        r = run_cli("check", bad)
        assert r.exit_code == 2
        assert "line 1" in r.output

    def test_json_format(self):
        r = run_cli("check", MODELS / "example4.json", "--format", "json")
        doc = json.loads(r.output)
        assert doc["summary"]["states"] == 3
        assert doc["graph"]["vertices"][0]["initial"] is True

    def test_textual_spec_file(self, tmp_path):
        spec = tmp_path / "ff.pidl"
        spec.write_text("vars: A\ninit: A\nrules:\n  1: A ~> !A\n  2: !A ~> A\n")
        r = run_cli("check", spec)
        assert r.exit_code == 1
        assert "states: 2" in r.output
        assert "cycles: 1" in r.output


class TestGraph:
    def test_example4_dot(self):
        r = run_cli("graph", MODELS / "example4.json")
        assert r.exit_code == 0
        assert r.output.count("[label=") >= 3
        assert r.output.count(" -> ") == 3

    def test_flipflop_dot(self):
        r = run_cli("graph", MODELS / "flipflop.json")
        assert r.output.count(" -> ") == 2

    def test_single_state_graph(self, tmp_path):
        spec = tmp_path / "one.pidl"
        spec.write_text("vars: A\ninit: A\n")
        r = run_cli("graph", spec)
        assert r.output.count(" -> ") == 0
        assert "s0" in r.output

    def test_json_graph(self):
        r = run_cli("graph", MODELS / "steelplant.json", "--format", "json")
        doc = json.loads(r.output)
        assert len(doc["vertices"]) == doc["anomalies"]["inconsistent"][0]["state"] + 1 or doc["vertices"]


class TestGen:
    def test_identical_bytes_across_runs(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        run_cli("gen", "--vars", 6, "--count", 3, "--seed", 11, "--out", a)
        run_cli("gen", "--vars", 6, "--count", 3, "--seed", 11, "--out", b)
        for k in (1, 2, 3):
            assert (a / f"rnd_{k}.json").read_bytes() == (b / f"rnd_{k}.json").read_bytes()

    def test_generated_models_parse(self, tmp_path):
        run_cli("gen", "--vars", 5, "--count", 1, "--seed", 2, "--out", tmp_path)
        r = run_cli("check", tmp_path / "rnd_1.json")
        assert r.exit_code in (0, 1)

    def test_too_few_vars(self):
        assert run_cli("gen", "--vars", 3).exit_code == 2


class TestBench:
    def test_row_format(self):
        r = run_cli("bench", "--vars", 5, "--count", 8, "--seed", 0, "--omit-times")
        assert r.exit_code == 0
        lines = r.output.strip().splitlines()
        assert lines[1] == "name\tvisible\ttime\tresult"
        assert any("/Y/" in l or "/N/" in l for l in lines), "no explored triple"
        assert any(l.endswith("inconsistent") for l in lines)

    def test_deterministic_across_jobs_and_hashseeds(self):
        runs = [
            run_proc("bench", "--vars", 5, "--count", 6, "--seed", 0,
                     "--omit-times", "--jobs", jobs, hashseed=seed)
            for jobs, seed in ((1, "1"), (2, "2"), (3, "33"))
        ]
        outs = {r.stdout for r in runs}
        assert all(r.returncode == 0 for r in runs)
        assert len(outs) == 1, "bench output varies across jobs or hash seeds"


class TestMisc:
    def test_out_flag_writes_files(self, tmp_path):
        report = tmp_path / "report.txt"
        r = run_cli("check", MODELS / "example4.json", "--out", report)
        assert r.exit_code == 0
        assert "states: 3" in report.read_text()
        table = tmp_path / "bench.txt"
        run_cli("bench", "--vars", 4, "--count", 2, "--seed", 1, "--omit-times", "--out", table)
        assert table.read_text().startswith("# 2 models")
        dot = tmp_path / "g.dot"
        run_cli("graph", MODELS / "flipflop.json", "--out", dot)
        assert dot.read_text().startswith("digraph")

    def test_help_lists_commands(self):
        r = run_cli("--help")
        for cmd in ("check", "graph", "gen", "bench", "serve"):
            assert cmd in r.output

    def test_unrecognized_document_kind(self, tmp_path):
        f = tmp_path / "odd.json"
        f.write_text('{"something": 1}')
        assert run_cli("check", f).exit_code == 2

    def test_timeout_is_a_clean_failure(self):
        r = run_cli("check", MODELS / "steelplant.json", "--time-limit", "0.001")
        assert r.exit_code == 2
        assert "exceeded" in r.output


class TestDeterminismAcrossProcesses:
    @pytest.mark.parametrize("args", [
        ("check", str(MODELS / "steelplant.json")),
        ("check", str(MODELS / "steelplant.json"), "--format", "json"),
        ("check", str(MODELS / "example4.json"), "--format", "json"),
        ("graph", str(MODELS / "steelplant.json"), "--format", "json"),
        ("graph", str(MODELS / "flipflop.json")),
    ])
    def test_byte_identical(self, args):
        a = run_proc(*args, hashseed="101")
        b = run_proc(*args, hashseed="7")
        assert a.stdout == b.stdout
        assert a.stdout
