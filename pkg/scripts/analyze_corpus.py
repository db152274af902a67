#!/usr/bin/env python3
"""Analyze every bundled model and write the reports and graph exports to a
directory (default ./out)."""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from click.testing import CliRunner  # noqa: E402

from pidl.cli import main as cli  # noqa: E402

ROOT = Path(__file__).resolve().parent.parent


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="out")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    runner = CliRunner()
    for path in sorted((ROOT / "models").glob("*.json")):
        base = out / path.stem
        for cmd, suffix in (
            (["check", str(path), "--out", f"{base}.report.txt"], "report"),
            (["check", str(path), "--format", "json", "--out", f"{base}.analysis.json"], "analysis"),
            (["graph", str(path), "--out", f"{base}.dot"], "dot"),
        ):
            result = runner.invoke(cli, cmd)
            if result.exit_code not in (0, 1):
                print(f"{path.name}: {suffix} failed: {result.output}", file=sys.stderr)
                sys.exit(2)
        print(f"{path.name}: reports in {base}.*")


if __name__ == "__main__":
    main()
