#!/usr/bin/env python3
"""Run the random-model experiment: batches of generated models checked for
anomalies, one result row per model.

The 20-variable block finishes in seconds; the 60- and 100-variable blocks
can run into the per-model time limit and are enabled with --long.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from pidl.cli import _bench_one, _format_time  # noqa: E402


def run_block(n_vars: int, count: int, seed: int, time_limit: float, omit_times: bool):
    print(f"# {count} models, {n_vars} variables, seed {seed}")
    print("name\tvisible\ttime\tresult")
    outcomes = {"inconsistent": 0, "explored": 0, "timeout": 0}
    for k in range(1, count + 1):
        k_, visible, elapsed, outcome = _bench_one((n_vars, seed, k, time_limit))
        shown = "-" if omit_times else _format_time(elapsed)
        print(f"rnd_{k_}\t{visible}\t{shown}\t{outcome}", flush=True)
        key = outcome if outcome in ("inconsistent", "timeout") else "explored"
        outcomes[key] += 1
    print(f"# {outcomes}")
    print()


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--time-limit", type=float, default=720.0)
    ap.add_argument("--long", action="store_true", help="also run 60 and 100 variables")
    ap.add_argument("--omit-times", action="store_true")
    args = ap.parse_args()

    sizes = [20, 60, 100] if args.long else [20]
    for n in sizes:
        run_block(n, args.count, args.seed, args.time_limit, args.omit_times)


if __name__ == "__main__":
    main()
