#!/usr/bin/env python3
"""Long-running lattice sweeps (not part of the test suite).

Traces average-Pauli-weight curves across whole model families: for each
model instance it maps with all three conventional mappers, runs randomized
subsystem descent from the best of them, and appends one CSV row with the
final weights and percentage reduction.  Expect minutes to hours depending
on the grid; the defaults below are the desk-friendly end of each family.

Examples:
    python benchmarks/run_lattice_sweeps.py chain-range --sites 20 --out chain_r.csv
    python benchmarks/run_lattice_sweeps.py all-to-all --max-sites 20 --out a2a.csv
    python benchmarks/run_lattice_sweeps.py grid --max-side 8 --out grid.csv
    python benchmarks/run_lattice_sweeps.py hubbard --max-side 6 --out hubbard.csv
"""

import argparse
import csv
import time

from rsdmap import (
    RSDConfig,
    SamplerKind,
    build_chain_hopping,
    build_grid_hopping,
    build_hubbard,
    map_fermion_operator,
    percentage_reduction,
    rsd_optimize,
    total_pauli_weight,
)

MAPPER_NAMES = ("jw", "bk", "ternary")


def run_case(tag, op, args, writer):
    mapped = {m: map_fermion_operator(m, op) for m in MAPPER_NAMES}
    pws = {m: total_pauli_weight(h) for m, h in mapped.items()}
    best = min(pws, key=pws.get)
    cfg = RSDConfig(
        iterations=args.iters,
        width=min(args.width, op.n_modes),
        depth=args.depth,
        cost_kind="pw",
        sampler=SamplerKind("hamming"),
        seed=args.seed,
    )
    t0 = time.perf_counter()
    res = rsd_optimize(mapped[best], cfg)
    elapsed = time.perf_counter() - t0
    rsd_pw = total_pauli_weight(res.hamiltonian)
    n_terms = len(res.hamiltonian)
    row = {
        "case": tag,
        "terms": n_terms,
        "jw_pw": pws["jw"],
        "bk_pw": pws["bk"],
        "ternary_pw": pws["ternary"],
        "start_mapper": best,
        "rsd_pw": rsd_pw,
        "rsd_avg_pw": round(rsd_pw / n_terms, 4),
        "pr_conv": round(percentage_reduction(rsd_pw, min(pws.values())), 4),
        "seconds": round(elapsed, 1),
    }
    writer.writerow(row)
    print(" ".join(f"{k}={v}" for k, v in row.items()), flush=True)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("family", choices=("chain-range", "all-to-all", "grid", "hubbard"))
    parser.add_argument("--sites", type=int, default=20, help="chain length (chain-range)")
    parser.add_argument("--max-sites", type=int, default=20, help="largest N (all-to-all)")
    parser.add_argument("--max-side", type=int, default=6, help="largest grid side")
    parser.add_argument("--width", type=int, default=4)
    parser.add_argument("--depth", type=int, default=4)
    parser.add_argument("--iters", type=int, default=30000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", required=True)
    args = parser.parse_args()

    fields = ["case", "terms", "jw_pw", "bk_pw", "ternary_pw", "start_mapper",
              "rsd_pw", "rsd_avg_pw", "pr_conv", "seconds"]
    with open(args.out, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields)
        writer.writeheader()
        if args.family == "chain-range":
            for r in range(1, args.sites):
                run_case(f"chain N={args.sites} r={r}",
                         build_chain_hopping(args.sites, r), args, writer)
        elif args.family == "all-to-all":
            for n in range(2, args.max_sites + 1):
                run_case(f"all-to-all N={n}",
                         build_chain_hopping(n, n - 1), args, writer)
        elif args.family == "grid":
            for n in range(2, args.max_side + 1):
                run_case(f"grid N={n}", build_grid_hopping(n), args, writer)
        else:
            for n in range(2, args.max_side + 1):
                run_case(f"hubbard N={n}", build_hubbard(n), args, writer)


if __name__ == "__main__":
    main()
