#!/usr/bin/env python3
"""Benchmark the exact-expectation scan: compiled kernel vs numpy fallback.

The scan dominates end-to-end runtime whenever a baseline needs the
exhaustive route (the G2 maximum in particular), so this is the hot loop
the compiled extension exists for.

    python benchmarks/bench_scan.py [--quick]
"""

from __future__ import annotations

import argparse
import time

from dutchdraw import ProblemShape, measure
from dutchdraw._engine import available_backends, scan_expectations_with

SHAPES = [
    ("cleveland", ProblemShape(303, 139)),
    ("banknote", ProblemShape(1372, 610)),
    ("occupancy", ProblemShape(20560, 4750)),
    ("bank_marketing", ProblemShape(45211, 5289)),
    ("adult", ProblemShape(48842, 11687)),
]
MEASURES = ["g2", "ts"]


def time_scan(backend, spec, shape, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        scan_expectations_with(backend, spec, shape)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true",
                        help="skip the two largest shapes")
    parser.add_argument("--repeats", type=int, default=2)
    args = parser.parse_args()

    backends = available_backends()
    if "compiled" not in backends:
        print("note: compiled kernel not built; timing the fallback only")
    shapes = SHAPES[:3] if args.quick else SHAPES

    header = f"{'shape':16s} {'measure':8s} {'cells':>12s}"
    for name in backends:
        header += f" {name:>12s}"
    if len(backends) == 2:
        header += f" {'speedup':>9s}"
    print(header)

    for label, shape in shapes:
        cells = (shape.p + 1) * (shape.n + 1)
        for mname in MEASURES:
            spec = measure(mname)
            times = {name: time_scan(mod, spec, shape, args.repeats)
                     for name, mod in backends.items()}
            line = f"{label:16s} {mname:8s} {cells:12.3e}"
            for name in backends:
                line += f" {times[name] * 1e3:10.1f}ms"
            if len(times) == 2:
                line += f" {times['python'] / times['compiled']:8.1f}x"
            print(line)


if __name__ == "__main__":
    main()
