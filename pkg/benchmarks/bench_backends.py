#!/usr/bin/env python3
"""Benchmark: compiled kernels vs the numpy fallback.

Times the three hot paths (branch-function grid evaluation, full
reconstruction, exhaustive uniqueness scan) on identical inputs under
each available backend and prints per-call times with the speedup.

Run from the repository root:

    python benchmarks/bench_backends.py [--trials N] [--grid M]
"""

import argparse
import time

import numpy as np

import wstate._backend as backend
from wstate import (
    ReconstructionTargets,
    invariant_profile,
    random_canonical,
    reconstruct,
    uniqueness_scan,
)
from wstate._backend import available_backends


def make_targets(count: int) -> list[ReconstructionTargets]:
    out = []
    for trial in range(count):
        w = random_canonical(3 + trial % 10, seed=123_000 + trial)
        out.append(ReconstructionTargets.from_profile(invariant_profile(w)))
    return out


def timed(fn, *args) -> float:
    started = time.perf_counter()
    fn(*args)
    return time.perf_counter() - started


def bench_branch_values(impl, targets, grid):
    for t in targets:
        lo, hi = t.domain()
        ys = lo + np.arange(grid) * ((hi - lo) / (grid - 1))
        impl.branch_values(t.x, 1, int(np.argmax(t.x)), ys, 1e-12)


def bench_reconstruct(impl, targets, grid, monkey):
    monkey(impl)
    for t in targets:
        reconstruct(t, grid_points=grid)


def bench_uniqueness(impl, targets, grid, monkey):
    monkey(impl)
    for t in targets:
        uniqueness_scan(t, grid)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=300)
    parser.add_argument("--grid", type=int, default=10_000)
    args = parser.parse_args()

    backends = available_backends()
    if len(backends) < 2:
        print(f"only one backend available ({', '.join(backends)}); "
              "build the extension to compare")
    targets = make_targets(args.trials)

    def monkey(impl):
        backend.impl = impl

    rows = []
    cases = [
        ("grid eval", lambda impl: bench_branch_values(impl, targets, args.grid)),
        ("reconstruct", lambda impl: bench_reconstruct(impl, targets, args.grid, monkey)),
        ("uniqueness scan", lambda impl: bench_uniqueness(impl, targets, args.grid, monkey)),
    ]
    original = backend.impl
    try:
        for label, runner in cases:
            times = {}
            for name, impl in backends.items():
                runner(impl)  # warm-up
                times[name] = timed(runner, impl) / args.trials
            rows.append((label, times))
    finally:
        backend.impl = original

    print(f"{args.trials} targets, grid {args.grid}")
    header = f"{'operation':<18}" + "".join(f"{name + ' (us)':>16}" for name in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for label, times in rows:
        row = f"{label:<18}" + "".join(f"{times[name] * 1e6:>16.1f}" for name in backends)
        if len(times) == 2:
            row += f"{times['python'] / times['ext']:>10.1f}x"
        print(row)


if __name__ == "__main__":
    main()
