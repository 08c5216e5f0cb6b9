#!/usr/bin/env python3
"""Compare the compiled and pure-python kernel backends.

Times the three hot kernels (batched response tensors, propagator blocks,
four-factor trace) against both backend modules in process, then times the
full named-component quadrature end to end in subprocesses so each run
binds its backend the same way a normal import does (the facade reads
``CHIVDW_FORCE_PYTHON`` once, at import time).

Usage:  python3 benchmarks/bench_kernels.py [--quick]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from chivdw import kernels


def best_of(func, *, repeats: int = 5, number: int = 50) -> float:
    """Best per-call time in seconds over ``repeats`` batches."""
    func()  # warm up (allocations, caches, JIT-free but fair)
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for _ in range(number):
            func()
        best = min(best, (time.perf_counter() - start) / number)
    return best


def micro_inputs(n: int):
    rng = np.random.default_rng(7)
    omegas = np.array([1.0, 1.3])
    ds = rng.uniform(-0.8, 0.8, (2, 3))
    mts = rng.uniform(-0.5, 0.5, (2, 3))
    xis = np.linspace(0.01, 5.0, n)
    rvec = np.array([1.2, -0.4, 1.8])
    stacks = rng.normal(size=(4, n, 3, 3))
    return omegas, ds, mts, xis, rvec, stacks


def run_micro(backend, n: int, repeats: int, number: int) -> dict:
    omegas, ds, mts, xis, rvec, stacks = micro_inputs(n)
    a, b, c, d = stacks
    return {
        "response_tensors": best_of(
            lambda: backend.response_tensors(omegas, ds, mts, xis),
            repeats=repeats, number=number),
        "free_blocks": best_of(
            lambda: backend.free_blocks(rvec, xis),
            repeats=repeats, number=number),
        "trace4": best_of(
            lambda: backend.trace4(a, b, c, d),
            repeats=repeats, number=number),
    }


_END_TO_END_SNIPPET = """
import json, time
import numpy as np
from chivdw import bundled_pair, Separation, u_named, backend_name

mol_a, mol_b = bundled_pair()
sep = Separation(2.0 * np.array([1.0, 2.0, 2.0]) / 3.0, np.zeros(3))
u_named(mol_a, mol_b, sep, "TOTAL")  # warm up
best = float("inf")
for _ in range(%(repeats)d):
    start = time.perf_counter()
    value = u_named(mol_a, mol_b, sep, "TOTAL").value
    best = min(best, time.perf_counter() - start)
print(json.dumps({"backend": backend_name(), "seconds": best,
                  "value": value}))
"""


def run_end_to_end(force_python: bool, repeats: int) -> dict:
    env = dict(os.environ)
    env["CHIVDW_FORCE_PYTHON"] = "1" if force_python else "0"
    proc = subprocess.run(
        [sys.executable, "-c", _END_TO_END_SNIPPET % {"repeats": repeats}],
        env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout.strip().splitlines()[-1])


def fmt_seconds(seconds: float) -> str:
    if seconds < 1e-3:
        return f"{seconds * 1e6:8.1f} us"
    return f"{seconds * 1e3:8.2f} ms"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true",
                        help="fewer repetitions (rough numbers, fast run)")
    args = parser.parse_args(argv)
    repeats, number = (3, 10) if args.quick else (5, 100)

    py = kernels.python_backend()
    ck = kernels.compiled_backend()
    print(f"active backend at import: {kernels.backend_name()}")
    if ck is None:
        print("compiled backend not built; showing pure-python timings only")

    for n in (64, 1024):
        print(f"\nkernel microbenchmarks, batch n={n} "
              f"(best of {repeats} x {number} calls)")
        py_times = run_micro(py, n, repeats, number)
        ck_times = run_micro(ck, n, repeats, number) if ck else {}
        header = f"  {'kernel':<18} {'python':>12}"
        if ck:
            header += f" {'compiled':>12} {'speedup':>9}"
        print(header)
        for name, py_t in py_times.items():
            line = f"  {name:<18} {fmt_seconds(py_t):>12}"
            if ck:
                ck_t = ck_times[name]
                line += f" {fmt_seconds(ck_t):>12} {py_t / ck_t:>8.1f}x"
            print(line)

    print("\nend-to-end: full named-component quadrature "
          "(bundled pair, TOTAL, R=2.0)")
    end_repeats = 3 if args.quick else 7
    results = [run_end_to_end(force_python=True, repeats=end_repeats)]
    if ck is not None:
        results.append(run_end_to_end(force_python=False,
                                      repeats=end_repeats))
    for res in results:
        print(f"  {res['backend']:<9} {fmt_seconds(res['seconds'])} per call"
              f"   (U = {res['value']:.12e})")
    if len(results) == 2:
        ref = results[1]["value"]
        rel = abs(results[0]["value"] - ref) / abs(ref)
        if rel > 1e-12:
            print(f"  WARNING: backends disagree (relative gap {rel:.2e})")
            return 1
        speedup = results[0]["seconds"] / results[1]["seconds"]
        print(f"  speedup {speedup:.1f}x, values agree to {rel:.1e} "
              f"(operation-order noise only)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
