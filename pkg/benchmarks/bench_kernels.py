#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the four hot paths on a realistic workload (a JW-mapped all-to-all
chain) plus one end-to-end optimizer segment.  Both backends are imported
directly so a single process can compare them; RSDMAP_BACKEND only selects
which one the package itself uses.

Usage: python benchmarks/bench_kernels.py [--sites N] [--iters T]
"""

import argparse
import time

import numpy as np

from rsdmap import build_chain_hopping, map_fermion_operator
from rsdmap.kernels import _numba, _numpy, conjugation_tables
from rsdmap.solver import restrict_arrays


def timeit(fn, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sites", type=int, default=16)
    parser.add_argument("--width", type=int, default=4)
    parser.add_argument("--depth", type=int, default=4)
    args = parser.parse_args()

    h = map_fermion_operator("jw", build_chain_hopping(args.sites, args.sites - 1))
    xs, zs, cs = h.to_arrays()
    abs_cs = np.abs(cs)
    n = h.n_qubits
    print(f"workload: all-to-all chain N={args.sites} -> {len(h)} strings on {n} qubits")

    idx = np.arange(args.width, dtype=np.int64)
    perm, wt = conjugation_tables(args.width)
    view = restrict_arrays(xs, zs, abs_cs, idx)
    active = view.words != 0
    words = view.words[active]
    values = view.counts[active].astype(np.float64)

    kinds = np.array([0, 1, 2, 2, 0], dtype=np.int8)
    qa = np.array([0, 1, 0, 2, 3], dtype=np.int64)
    qb = np.array([-1, -1, 1, 3, -1], dtype=np.int64)

    benches = [
        ("term_weights", lambda m: lambda: m.term_weights(xs, zs)),
        ("column_counts", lambda m: lambda: m.column_counts(xs, zs, n)),
        ("restrict_words", lambda m: lambda: m.restrict_words(xs, zs, idx)),
        (
            "apply_gates",
            lambda m: lambda: m.apply_gates(xs.copy(), zs.copy(), cs.copy(), kinds, qa, qb),
        ),
        (
            f"dfs_minimize (w={args.width}, d={args.depth}, m={len(words)})",
            lambda m: lambda: m.dfs_minimize(words, values, perm, wt, args.depth, args.width),
        ),
    ]

    print(f"{'kernel':44s} {'numba':>12s} {'numpy':>12s} {'speedup':>9s}")
    for name, make in benches:
        fn_nb, fn_np = make(_numba), make(_numpy)
        fn_nb()  # trigger JIT before timing
        t_nb, t_np = timeit(fn_nb), timeit(fn_np)
        print(f"{name:44s} {t_nb * 1e3:10.3f}ms {t_np * 1e3:10.3f}ms {t_np / t_nb:8.1f}x")

    # sanity: identical search results on this workload
    got_nb = _numba.dfs_minimize(words, values, perm, wt, args.depth, args.width)
    got_np = _numpy.dfs_minimize(words, values, perm, wt, args.depth, args.width)
    assert got_nb[0] == got_np[0] and got_nb[1] == got_np[1]
    assert np.array_equal(got_nb[2], got_np[2])
    print("backends agree on the search result")


if __name__ == "__main__":
    main()
