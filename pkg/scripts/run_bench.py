#!/usr/bin/env python3
"""Run the default benchmark suite and write its CSV and text report.

The default suite contrasts serial and shallow solvers on every family:
cellular-automaton evolution (plain vs compiled k-row stepping), circuit
evaluation (gate-at-a-time vs layer-at-a-time), permutation folds (serial
vs tree), depth-of-one (full evaluation vs value probes), and universal
seed search.  Work and depth columns come from the cost meters; wall_ns is
the only column expected to vary between reruns.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from depthbench.bench import default_suite, emit_csv, emit_report, run_suite


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--csv", type=Path, default=Path("bench.csv"),
                        help="CSV output path (default: bench.csv)")
    parser.add_argument("--report", type=Path, default=Path("bench_report.txt"),
                        help="text report output path (default: bench_report.txt)")
    parser.add_argument("--print-report", action="store_true",
                        help="also dump the report to stdout")
    args = parser.parse_args(argv)

    records = run_suite(default_suite())
    errors = sum(1 for r in records if "error" in r.aux)
    args.csv.write_text(emit_csv(records))
    report = emit_report(records)
    args.report.write_text(report)
    if args.print_report:
        print(report)
    print(f"ran {len(records)} cases ({errors} errors)", file=sys.stderr)
    print(f"csv    -> {args.csv}", file=sys.stderr)
    print(f"report -> {args.report}", file=sys.stderr)
    return 1 if errors else 0


if __name__ == "__main__":
    sys.exit(main())
