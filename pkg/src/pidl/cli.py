"""Command-line interface.

Commands: ``check`` (anomaly report, exit 0 clean / 1 anomalies / 2 bad
input), ``graph`` (DOT or JSON export), ``gen`` (seeded random model
corpus), ``bench`` (batch experiment table), ``serve`` (the session API).
All outputs are deterministic given the flags; ``bench --omit-times``
replaces wall-clock columns so the whole table is byte-stable.
"""

from __future__ import annotations

import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import click

from . import analysis as an
from .core import SpecError
from .dopler import (
    ModelError,
    detect_anomalies,
    generate_random_model,
    model_seed,
    model_to_json,
    parse_model,
)
from .dopler.anomalies import ModelAnalysis
from .saturation import ExploreTimeout, explore
from .textfmt import SpecFormatError, parse_spec_text, spec_from_json

DEFAULT_TIME_LIMIT = 720.0
WITNESS_CAP = 5


class UsageFailure(click.ClickException):
    exit_code = 2


def _setup_logging() -> None:
    level = os.environ.get("PIDL_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))


def load_input(path: str):
    """Returns ("model", DoplerModel) or ("spec", Specification)."""
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise UsageFailure(f"cannot read {path}: {e.strerror}")
    try:
        if p.suffix == ".pidl":
            return "spec", parse_spec_text(text)
        doc = json.loads(text)
        if not isinstance(doc, dict):
            raise UsageFailure(f"{path}: expected a JSON object")
        if "decisions" in doc:
            return "model", parse_model(text)
        if "vars" in doc or "rules" in doc or "user" in doc:
            return "spec", spec_from_json(doc)
        raise UsageFailure(f"{path}: neither a model nor a specification document")
    except json.JSONDecodeError as e:
        raise UsageFailure(f"{path}: line {e.lineno}, column {e.colno}: {e.msg}")
    except (ModelError, SpecFormatError, SpecError) as e:
        raise UsageFailure(f"{path}: {e}")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


def _deadline(limit: float) -> float:
    return time.monotonic() + limit


@click.group()
def main() -> None:
    _setup_logging()


def _state_line(state, translation) -> str:
    if translation is not None:
        from .dopler import describe_state

        assignment = describe_state(state, translation)
        parts = [f"{k}={v}" for k, v in assignment.items() if v != "unset"]
        return ", ".join(parts) if parts else "(all unset)"
    pos = sorted(str(l) for l in state if l.positive)
    return " ".join(pos) if pos else "{}"


def _check_text(path: str, summary: dict, witnesses: dict) -> str:
    lines = [f"model: {path}"]
    lines.append(f"states: {summary['states']}")
    lines.append(f"inconsistent: {summary['inconsistent']}")
    if "asset_conflicts" in summary:
        lines.append(f"asset-conflicts: {summary['asset_conflicts']}")
    lines.append(f"incompleteness: {summary['incompleteness']}")
    lines.append(f"redundant-pairs: {summary['redundant_pairs']}")
    lines.append(f"cycles: {summary['cycles']}")
    lines.append(f"rule-confluent: {'yes' if summary['rule_confluent'] else 'no'}")
    lines.append(f"user-confluent: {'yes' if summary['user_confluent'] else 'no'}")
    lines.append(f"non-terminating: {summary['non_terminating']}")
    lines.append(f"verdict: {witnesses.pop('_verdict')}")
    for section, items in witnesses.items():
        if not items:
            continue
        lines.append(f"{section}:")
        lines.extend(f"  {item}" for item in items[:WITNESS_CAP])
        if len(items) > WITNESS_CAP:
            lines.append(f"  ... {len(items) - WITNESS_CAP} more")
    return "\n".join(lines) + "\n"


def _model_witness_lines(analysis: ModelAnalysis) -> dict:
    tr = analysis.translation
    witnesses: dict = {}
    witnesses["inconsistency witnesses"] = [
        f"{_state_line(w.state, tr)} [{', '.join(map(str, w.culprits))}]"
        for w in analysis.inconsistency
        if not w.is_asset_conflict()
    ]
    witnesses["asset conflicts"] = [
        f"{', '.join(w.assets)} at {_state_line(w.state, tr)}"
        for w in analysis.asset_conflicts
    ]
    witnesses["incompleteness witnesses"] = [
        f"check {name}: {_state_line(state, tr)}"
        for name, state, _ in analysis.incompleteness
    ]
    witnesses["redundant rule pairs"] = [
        f"rules {i} and {j}: {_state_line(s, tr)} -> {_state_line(t, tr)}"
        for i, j, s, t in analysis.report.redundant_pairs
    ]
    witnesses["cycles"] = [
        " -> ".join(_state_line(s, tr) for s in cycle)
        for cycle in analysis.report.cycles
    ]
    uc = analysis.report.user_confluence
    if not uc.confluent:
        u, _s1, t1, _s2, t2 = uc.counterexample
        actions = [
            "%s=%s" % tr.action_of_index[i] if i in tr.action_of_index else str(i)
            for i in u
        ]
        witnesses["order dependence"] = [
            f"decisions {{{', '.join(actions)}}} reach both "
            f"[{_state_line(t1, tr)}] and [{_state_line(t2, tr)}]"
        ]
    rc = analysis.report.rule_confluence
    if not rc.confluent:
        s, t1, t2 = rc.counterexample
        witnesses["rule divergence"] = [
            f"{_state_line(s, tr)} reaches both [{_state_line(t1, tr)}] and [{_state_line(t2, tr)}]"
        ]
    return witnesses


def _model_witness_json(analysis: ModelAnalysis) -> dict:
    pos = analysis.graph.position()
    return {
        "inconsistency": [
            {
                "state": pos[w.state],
                "path": list(w.path),
                "assignment": w.assignment,
                "culprits": [str(c) for c in w.culprits],
                "assets": list(w.assets),
            }
            for w in analysis.inconsistency
        ],
        "incompleteness": [
            {"check": name, "state": pos[state], "assignment": assignment}
            for name, state, assignment in analysis.incompleteness
        ],
    }


def _spec_witness_lines(graph, report) -> dict:
    witnesses: dict = {}
    witnesses["inconsistency witnesses"] = [
        f"{_state_line(s, None)} via path {list(p)}" for s, p in report.inconsistent_states
    ]
    witnesses["redundant rule pairs"] = [
        f"transitions {i} and {j}: {_state_line(s, None)} -> {_state_line(t, None)}"
        for i, j, s, t in report.redundant_pairs
    ]
    witnesses["cycles"] = [
        " -> ".join(_state_line(s, None) for s in cycle) for cycle in report.cycles
    ]
    return witnesses


@main.command()
@click.argument("path")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.option("--out", default=None, help="Write the report to a file.")
@click.option("--time-limit", default=DEFAULT_TIME_LIMIT, show_default=True)
@click.option("--cycle-cap", default=100, show_default=True)
@click.option("--jobs", default=1, help="Accepted for symmetry; check runs one model.")
def check(path, fmt, out, time_limit, cycle_cap, jobs) -> None:
    """Analyze a model or specification and report every anomaly class."""
    kind, loaded = load_input(path)
    try:
        if kind == "model":
            analysis = detect_anomalies(
                loaded, deadline=_deadline(time_limit), cycle_cap=cycle_cap
            )
            summary = analysis.summary()
            anomalous = analysis.anomalous()
            if fmt == "json":
                doc = {
                    "model": path,
                    "summary": summary,
                    "witnesses": _model_witness_json(analysis),
                    "graph": an.graph_to_json(
                        analysis.graph, analysis.result, analysis.report
                    ),
                }
                _emit(an.dumps_stable(doc), out)
            else:
                witnesses = _model_witness_lines(analysis)
                witnesses["_verdict"] = "anomalies" if anomalous else "clean"
                _emit(_check_text(path, summary, witnesses), out)
        else:
            result = explore(loaded, deadline=_deadline(time_limit))
            graph, report = an.analyze(result, cycle_cap=cycle_cap)
            summary = an.report_summary(graph, report)
            anomalous = not report.clean()
            if fmt == "json":
                doc = {
                    "model": path,
                    "summary": summary,
                    "graph": an.graph_to_json(graph, result, report),
                }
                _emit(an.dumps_stable(doc), out)
            else:
                witnesses = _spec_witness_lines(graph, report)
                witnesses["_verdict"] = "anomalies" if anomalous else "clean"
                _emit(_check_text(path, summary, witnesses), out)
    except ExploreTimeout:
        raise UsageFailure(f"{path}: exploration exceeded {time_limit:g}s")
    sys.exit(1 if anomalous else 0)


@main.command()
@click.argument("path")
@click.option("--format", "fmt", type=click.Choice(["dot", "json"]), default="dot")
@click.option("--out", default=None)
@click.option("--time-limit", default=DEFAULT_TIME_LIMIT, show_default=True)
def graph(path, fmt, out, time_limit) -> None:
    """Export the state graph (DOT or the analysis JSON document)."""
    kind, loaded = load_input(path)
    try:
        if kind == "model":
            analysis = detect_anomalies(loaded, deadline=_deadline(time_limit))
            g, result, report = analysis.graph, analysis.result, analysis.report
        else:
            result = explore(loaded, deadline=_deadline(time_limit))
            g, report = an.analyze(result)
    except ExploreTimeout:
        raise UsageFailure(f"{path}: exploration exceeded {time_limit:g}s")
    if fmt == "dot":
        _emit(an.to_dot(g), out)
    else:
        _emit(an.dumps_stable(an.graph_to_json(g, result, report)), out)


@main.command()
@click.option("--vars", "n_vars", required=True, type=int)
@click.option("--count", default=1, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", "out_dir", default=".", show_default=True)
@click.option("--prefix", default="rnd", show_default=True)
def gen(n_vars, count, seed, out_dir, prefix) -> None:
    """Generate a seeded corpus of random models, one JSON file each."""
    if n_vars < 4:
        raise UsageFailure("--vars must be at least 4")
    directory = Path(out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    for k in range(1, count + 1):
        model = generate_random_model(n_vars, model_seed(seed, k))
        target = directory / f"{prefix}_{k}.json"
        target.write_text(json.dumps(model_to_json(model), indent=2) + "\n")
        click.echo(f"wrote {target}")


def _bench_one(args: tuple) -> tuple:
    n_vars, seed, k, time_limit = args
    model = generate_random_model(n_vars, model_seed(seed, k))
    visible = len(model.statically_visible())
    started = time.monotonic()
    try:
        from .dopler.translate import build_translation

        tr = build_translation(model)
        result = explore(
            tr.spec,
            deadline=started + time_limit,
            stop_on_inconsistency=True,
        )
        if result.stopped_on_inconsistency:
            outcome = "inconsistent"
        else:
            g, report = an.analyze(result)
            cyc = "Y" if report.cycles else "N"
            outcome = f"{len(g.vertices)}/{cyc}/{len(report.redundant_pairs)}"
    except ExploreTimeout:
        outcome = "timeout"
    return (k, visible, time.monotonic() - started, outcome)


def _format_time(seconds: float) -> str:
    minutes = int(seconds // 60)
    return f"{minutes}m{seconds - 60 * minutes:.2f}s"


@main.command()
@click.option("--vars", "n_vars", default=20, show_default=True)
@click.option("--count", default=20, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--time-limit", default=DEFAULT_TIME_LIMIT, show_default=True)
@click.option("--jobs", default=1, show_default=True)
@click.option("--omit-times", is_flag=True, help="Stable output: no wall-clock columns.")
@click.option("--out", default=None)
def bench(n_vars, count, seed, time_limit, jobs, omit_times, out) -> None:
    """Generate and analyze a batch of random models; one row per model.

    A row shows the model name, its visible-variable count, the wall time
    and either ``states/cycle(Y|N)/redundant-pairs`` or ``inconsistent`` or
    ``timeout``."""
    tasks = [(n_vars, seed, k, time_limit) for k in range(1, count + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_bench_one, tasks))
    else:
        rows = [_bench_one(t) for t in tasks]
    lines = [f"# {count} models, {n_vars} variables, seed {seed}"]
    lines.append("name\tvisible\ttime\tresult")
    outcomes = {"inconsistent": 0, "timeout": 0, "explored": 0}
    for k, visible, elapsed, outcome in rows:
        shown = "-" if omit_times else _format_time(elapsed)
        lines.append(f"rnd_{k}\t{visible}\t{shown}\t{outcome}")
        if outcome in ("inconsistent", "timeout"):
            outcomes[outcome] += 1
        else:
            outcomes["explored"] += 1
    lines.append(
        f"# inconsistent: {outcomes['inconsistent']}, explored: {outcomes['explored']}, "
        f"timeout: {outcomes['timeout']}"
    )
    _emit("\n".join(lines) + "\n", out)


@main.command()
@click.option("--port", default=None, type=int, help="Defaults to $PIDL_PORT or 8000.")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--model", "models", multiple=True, help="Model files to preload.")
@click.option("--state-dir", default=None, help="Persist session snapshots here.")
def serve(port, host, models, state_dir) -> None:
    """Serve the interactive session API (and the UI bundle when built)."""
    import uvicorn

    from .api import create_app

    if port is None:
        port = int(os.environ.get("PIDL_PORT", "8000"))
    app = create_app(preload=list(models), state_dir=state_dir)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
