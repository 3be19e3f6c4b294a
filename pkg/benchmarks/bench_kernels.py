"""Compare the compiled and NumPy survivor kernels.

    python3 benchmarks/bench_kernels.py [--candidates N] [--repeat R]

Two measurements: the filter kernel alone on a fixed batch of candidate
values, and a whole search (no matrix confirmation) over a six-parameter
grid.  Masks from both backends must agree or the script exits 1.
"""
import argparse
import itertools
import sys
import time

import numpy as np

from ybsys import kernels
from ybsys.functional import (SearchConfig, _spectral_grid_size, _TemplateTable, compile_system,
                              derive_system, search_solutions)

LINEAR6 = {
    "parameters": ["a", "b", "c", "d", "e", "f"],
    "templates": {"alpha": "a*(u-v)", "beta": "b*(u-v)", "gamma": "a*u-b*v",
                  "eta": "c*u-d*v", "zeta": "e*u-f*v", "delta": "a*u-f*v"},
    "domain": {"kind": "grid", "bound": 2},
    "verify_on": [],
}


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def kernel_batch(n, seed=0):
    config = SearchConfig.from_json(LINEAR6)
    table = _TemplateTable(config)
    compiled = compile_system(derive_system("AAA"), derive_system("ACC"))
    k = _spectral_grid_size(compiled, 1)
    axis = np.arange(k, dtype=np.int64)
    points = np.array(list(itertools.product(axis, axis, axis)), dtype=np.int64)
    rng = np.random.default_rng(seed)
    cand = rng.integers(-2, 3, size=(n, 6), dtype=np.int64)
    cand[: n // 10] = 1  # some survivors, so the early exit is not the whole story
    vals = table.values(cand, points, 0, np.int64)
    return vals, compiled.coef.astype(np.int64), compiled.idx, compiled.eq_start


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--candidates", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)} (default {kernels.BACKEND})")
    if "cython" not in backends:
        print("compiled kernels not built; only the fallback is timed")

    vals, coef, idx, eq_start = kernel_batch(args.candidates)
    print(f"\nfilter kernel, {vals.shape[0]} candidates x {vals.shape[1]} points")
    masks, times = {}, {}
    for name in backends:
        times[name], masks[name] = best_of(
            lambda: kernels.survivors(vals, coef, idx, eq_start, 0, name), args.repeat)
        print(f"  {name:7s} {times[name] * 1e3:9.1f} ms  survivors={int(np.sum(masks[name]))}")
    if len(masks) == 2:
        if not np.array_equal(masks["python"].astype(bool), masks["cython"].astype(bool)):
            print("MISMATCH between backends")
            return 1
        print(f"  speedup {times['python'] / times['cython']:.1f}x")

    config = SearchConfig.from_json(LINEAR6)
    print(f"\nsearch without matrix check, {config.candidate_count()} candidates")
    found = {}
    for name in backends:
        t, res = best_of(lambda: search_solutions(config, backend=name), 1)
        found[name] = [v for v, _ in res.solutions]
        print(f"  {name:7s} {t:7.2f} s  solutions={len(res.solutions)}")
    if len(found) == 2 and found["python"] != found["cython"]:
        print("MISMATCH between backends")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
