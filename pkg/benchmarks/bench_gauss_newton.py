"""Benchmark: numba JIT kernel vs pure-numpy kernel on the realization search.

Runs the same seeded Gauss-Newton workload through both backends and prints
wall times, per-restart costs and the speedup.  Certification outcomes must
agree.  Select a single backend at runtime with DSPKIT_BACKEND=numpy|numba.

Usage: python benchmarks/bench_gauss_newton.py [--restarts N] [--sizes 2,3,4]
"""

from __future__ import annotations

import argparse
import os
import time

import numpy as np

from dspkit.enumerate import all_jnfs
from dspkit.classify import is_good
from dspkit.genericity import sample_generic
from dspkit.jnf import JnfTuple
from dspkit.oracle import SearchBudget, realize
from dspkit.oracle import gn_numba, gn_numpy
from dspkit.oracle.numeric import jordan_matrix
from dspkit.oracle.search import _random_start


def workload(sizes, per_size=2):
    """Deterministic solvable instances with sampled generic eigenvalues."""
    import itertools
    import random

    rng = random.Random(2025)
    instances = []
    for n in sizes:
        pool = [
            JnfTuple(combo)
            for combo in itertools.combinations_with_replacement(all_jnfs(n), 3)
            if is_good(JnfTuple(combo))
        ]
        rng.shuffle(pool)
        taken = 0
        for tup in pool:
            try:
                specs = sample_generic(tup, "additive", seed=n * 100 + taken)
            except Exception:
                continue
            instances.append(specs)
            taken += 1
            if taken >= per_size:
                break
    return instances


def bench_kernel(run, instances, restarts, iters):
    """Time raw kernel iterations (no certification) over fixed restarts."""
    total = 0.0
    solved = 0
    for idx, specs in enumerate(instances):
        G = np.array([jordan_matrix(s) for s in specs])
        m, n, _ = G.shape
        for r in range(restarts):
            Q0 = _random_start(idx, r, m, n, 1e4)
            t0 = time.perf_counter()
            _, resid, _ = run(G, Q0, False, iters, 1e-12)
            total += time.perf_counter() - t0
            if resid < 1e-8:
                solved += 1
    return total, solved


def bench_realize(instances, backend, restarts):
    os.environ["DSPKIT_BACKEND"] = backend
    outcomes = []
    t0 = time.perf_counter()
    for idx, specs in enumerate(instances):
        res = realize(specs, SearchBudget(restarts=restarts, seed=idx))
        outcomes.append(None if res is None else (res.certified, res.burnside_dim))
    return time.perf_counter() - t0, outcomes


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--restarts", type=int, default=10)
    parser.add_argument("--iters", type=int, default=200)
    parser.add_argument("--sizes", default="2,3,4")
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    instances = workload(sizes)
    print(f"workload: {len(instances)} instances, sizes {sizes}, "
          f"{args.restarts} restarts x {args.iters} iters")

    if gn_numba.AVAILABLE:
        print("warming numba JIT cache...")
        t0 = time.perf_counter()
        bench_kernel(gn_numba.run, instances[:1], 1, 5)
        print(f"  compile/load: {time.perf_counter() - t0:.2f}s")

    t_np, solved_np = bench_kernel(gn_numpy.run, instances, args.restarts, args.iters)
    print(f"kernel numpy : {t_np:8.3f}s  ({solved_np} restarts converged)")
    if gn_numba.AVAILABLE:
        t_nb, solved_nb = bench_kernel(gn_numba.run, instances, args.restarts, args.iters)
        print(f"kernel numba : {t_nb:8.3f}s  ({solved_nb} restarts converged)")
        print(f"kernel speedup: {t_np / t_nb:.2f}x")

    t, out_np = bench_realize(instances, "numpy", args.restarts)
    print(f"realize numpy: {t:8.3f}s")
    if gn_numba.AVAILABLE:
        t, out_nb = bench_realize(instances, "numba", args.restarts)
        print(f"realize numba: {t:8.3f}s")
        agree = sum(a == b for a, b in zip(out_np, out_nb))
        print(f"certification agreement: {agree}/{len(out_np)}")
        assert agree == len(out_np), "backends disagree on certification"


if __name__ == "__main__":
    main()
