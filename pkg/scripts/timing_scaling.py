#!/usr/bin/env python3
"""Measure how the solve cost scales with problem size.

Times the full two-stage pipeline over three octaves of N on a uniform
mesh, fits the log-log slope of the solve time, and compares the layer
mesh against the uniform mesh at the largest N.  A slope near 1 reflects
the linear cost of the tridiagonal elimination.
"""

import argparse
import sys

from layerfem import MeshKind, SweepConfig, run_sweep, timing_scaling


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--epsilon", type=float, default=1e-8)
    parser.add_argument("--min-exponent", type=int, default=12)
    parser.add_argument("--max-exponent", type=int, default=20)
    parser.add_argument("--step", type=int, default=2, help="exponent stride")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    n_values = tuple(
        2**k for k in range(args.min_exponent, args.max_exponent + 1, args.step)
    )
    if len(n_values) < 4 or n_values[-1] < 8 * n_values[0]:
        parser.error("need at least 4 sizes spanning 3 octaves for a slope fit")
    config = SweepConfig(
        epsilons=(args.epsilon,),
        n_values=n_values,
        mesh_kinds=(MeshKind.UNIFORM,),
        timing_repeats=args.repeats,
    )
    records = run_sweep(config)
    print("N,assembly_s,solve_s")
    for r in records:
        print(f"{r.n_intervals},{r.assembly_seconds:.6e},{r.solve_seconds:.6e}")
    slope = timing_scaling(records)
    print(f"log-log solve-time slope: {slope:.3f}")

    comparison = SweepConfig(
        epsilons=(args.epsilon,),
        n_values=(n_values[-1],),
        mesh_kinds=(MeshKind.UNIFORM, MeshKind.SHISHKIN),
        timing_repeats=args.repeats,
    )
    uniform, shishkin = run_sweep(comparison)
    ratio = shishkin.solve_seconds / uniform.solve_seconds
    print(f"layer/uniform solve-time ratio at N={n_values[-1]}: {ratio:.3f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
