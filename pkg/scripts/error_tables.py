#!/usr/bin/env python3
"""Reproduce the error and rate tables as CSV files.

Runs the sweep presets through the same code path as the command line
and drops one CSV per preset into --outdir.  table1/table3 cover the
strongly layered regime (eps = 1e-10 .. 1e-6), table2/table4 the
moderate regime (eps = 1e-4 .. 1), and epsilon-one isolates the
unperturbed uniform-mesh baseline.
"""

import argparse
import pathlib
import sys

from layerfem.cli import main as layerfem_main

PRESETS = ("table1", "table2", "table3", "table4", "epsilon-one")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="results", help="directory for the CSVs")
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--timing-repeats", type=int, default=1)
    parser.add_argument(
        "--preset", choices=PRESETS, action="append",
        help="run only the named preset(s); default is all of them",
    )
    args = parser.parse_args()

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for preset in args.preset or PRESETS:
        target = outdir / f"{preset}.csv"
        code = layerfem_main(
            [
                "sweep",
                "--preset", preset,
                "--jobs", str(args.jobs),
                "--timing-repeats", str(args.timing_repeats),
                "--output", str(target),
            ]
        )
        if code != 0:
            return code
        print(f"wrote {target}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
