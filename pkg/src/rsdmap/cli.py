"""Command-line pipeline: build -> map -> optimize -> metrics/compare.

All file formats are the documented JSON/CSV/text schemas, every output is
written atomically, and all randomness flows from --seed (a fresh seed is
drawn from the OS and recorded when the flag is absent).

Exit codes: 0 success, 2 usage error, 3 input-format error, 4 numeric
integrity error (imaginary residue).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

from .fermion import FermionOperator, to_majorana
from .mappers import MAPPERS, apply_mapping
from .models import LatticeSpec
from .optimize import (
    DEFAULT_HAMMING_EPSILON,
    RSDConfig,
    SamplerKind,
    draw_seed,
    percentage_reduction,
    rsd_optimize,
    write_trajectory_csv,
)
from .pauli import (
    FormatError,
    NumericIntegrityError,
    QubitHamiltonian,
    total_pauli_weight,
    weighted_pauli_weight,
)

THREADS_ENV_VAR = "RSDMAP_THREADS"

MODEL_KINDS = {
    "chain": "chain_hopping",
    "alltoall": "all_to_all",
    "grid": "grid_hopping",
    "hubbard": "hubbard",
}


def _sha256(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _atomic_write(path, text: str) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _metrics_dict(h: QubitHamiltonian) -> dict:
    pw = total_pauli_weight(h)
    terms = len(h)
    return {
        "terms": terms,
        "pw": pw,
        "wpw": weighted_pauli_weight(h),
        "avg_pw": pw / terms if terms else 0.0,
    }


def _print_metrics(m: dict, prefix: str = "") -> None:
    print(f"{prefix}terms  {m['terms']}")
    print(f"{prefix}pw     {m['pw']}")
    print(f"{prefix}wpw    {m['wpw']:.6f}")
    print(f"{prefix}avg_pw {m['avg_pw']:.6f}")


def _apply_thread_cap(threads) -> None:
    if threads is None:
        env = os.environ.get(THREADS_ENV_VAR)
        threads = int(env) if env else None
    if threads is None:
        return
    if threads < 1:
        raise ValueError("--threads must be >= 1")
    try:
        import numba

        numba.set_num_threads(min(threads, numba.config.NUMBA_NUM_THREADS))
    except ImportError:  # numpy backend: nothing to cap
        pass


def cmd_build(args) -> int:
    spec = LatticeSpec(
        kind=MODEL_KINDS[args.model],
        sites=args.sites,
        range_=args.range,
        t_hop=args.t,
        u_int=args.u,
        boundary=args.boundary,
    )
    op = spec.build()
    op.save(args.out, metadata=spec.metadata())
    print(f"wrote {args.out}: {op.n_modes} modes, {len(op)} terms")
    return 0


def cmd_map(args) -> int:
    op = FermionOperator.load(args.input)
    table = MAPPERS[args.mapper](op.n_modes)
    h = apply_mapping(table, to_majorana(op))
    _atomic_write(args.out, h.dumps() + "\n")
    _print_metrics(_metrics_dict(h))
    print(f"wrote {args.out}")
    return 0


def cmd_optimize(args) -> int:
    started = time.perf_counter()
    _apply_thread_cap(args.threads)
    h0 = QubitHamiltonian.load(args.input)

    seed = args.seed if args.seed is not None else draw_seed()
    cfg = RSDConfig(
        iterations=args.iters,
        width=args.width,
        depth=args.depth,
        cost_kind=args.cost,
        sampler=SamplerKind(args.sampler, args.epsilon),
        seed=seed,
        patience=args.patience,
    )
    result = rsd_optimize(h0, cfg)

    out = args.out
    stem = out[:-5] if out.endswith(".json") else out
    gate_log = args.gate_log or f"{stem}.gates.txt"
    trajectory = args.trajectory or f"{stem}.traj.csv"
    manifest_path = args.manifest or f"{stem}.manifest.json"

    _atomic_write(out, result.hamiltonian.dumps() + "\n")
    _atomic_write(gate_log, result.gate_sequence.dumps())
    write_trajectory_csv(trajectory + ".tmp", result.records, cfg.cost_kind)
    os.replace(trajectory + ".tmp", trajectory)

    manifest = {
        "command": "rsdmap " + " ".join(args.raw_argv),
        "config": {
            "iterations": cfg.iterations,
            "width": cfg.width,
            "depth": cfg.depth,
            "cost": cfg.cost_kind,
            "sampler": cfg.sampler.name,
            "epsilon": cfg.sampler.epsilon,
            "patience": cfg.patience,
        },
        "seed": seed,
        "input": {"path": args.input, "sha256": _sha256(args.input)},
        "outputs": {
            "hamiltonian": {"path": out, "sha256": _sha256(out)},
            "gate_log": {"path": gate_log, "sha256": _sha256(gate_log)},
            "trajectory": {"path": trajectory, "sha256": _sha256(trajectory)},
        },
        "metrics": {
            "initial": _metrics_dict(h0),
            "final": _metrics_dict(result.hamiltonian),
        },
        "wall_time_s": time.perf_counter() - started,
    }
    _atomic_write(manifest_path, json.dumps(manifest, indent=1, sort_keys=True) + "\n")

    accepted = sum(1 for r in result.records if r.accepted)
    print(f"seed   {seed}")
    print(f"steps  {len(result.records)} ({accepted} accepted, {len(result.gate_sequence)} gates)")
    _print_metrics(_metrics_dict(result.hamiltonian))
    print(f"wrote {out}, {gate_log}, {trajectory}, {manifest_path}")
    return 0


def cmd_metrics(args) -> int:
    h = QubitHamiltonian.load(args.input)
    _print_metrics(_metrics_dict(h))
    return 0


def cmd_compare(args) -> int:
    h_a = QubitHamiltonian.load(args.input_a)
    h_b = QubitHamiltonian.load(args.input_b)
    if h_a.n_qubits != h_b.n_qubits:
        raise ValueError(
            f"qubit counts differ: {h_a.n_qubits} vs {h_b.n_qubits}"
        )
    pw_a, pw_b = total_pauli_weight(h_a), total_pauli_weight(h_b)
    wpw_a, wpw_b = weighted_pauli_weight(h_a), weighted_pauli_weight(h_b)
    print(f"pw_a   {pw_a}")
    print(f"pw_b   {pw_b}")
    print(f"pr     {percentage_reduction(pw_a, pw_b):.6f}")
    print(f"wpw_a  {wpw_a:.6f}")
    print(f"wpw_b  {wpw_b:.6f}")
    print(f"pr_w   {percentage_reduction(wpw_a, wpw_b):.6f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rsdmap",
        description="Pauli-weight reduction for fermion-to-qubit mappings "
        "via randomized subsystem descent.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct a benchmark fermionic model")
    p.add_argument("--model", required=True, choices=sorted(MODEL_KINDS))
    p.add_argument("--sites", required=True, type=int, help="chain length or grid side")
    p.add_argument("--range", type=int, default=1, help="hopping range (chain only)")
    p.add_argument("--t", type=float, default=1.0, help="Hubbard hopping coefficient")
    p.add_argument("--u", type=float, default=4.0, help="Hubbard on-site coefficient")
    p.add_argument("--boundary", choices=("open", "periodic"), default="open")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("map", help="map a fermionic file to a qubit Hamiltonian")
    p.add_argument("input")
    p.add_argument("--mapper", required=True, choices=sorted(MAPPERS))
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("optimize", help="run randomized subsystem descent")
    p.add_argument("input")
    p.add_argument("--out", required=True)
    p.add_argument("--width", type=int, default=4)
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--iters", type=int, default=1000)
    p.add_argument("--cost", choices=("pw", "wpw"), default="pw")
    p.add_argument("--sampler", choices=("uniform", "hamming"), default="hamming")
    p.add_argument("--epsilon", type=float, default=DEFAULT_HAMMING_EPSILON)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--patience", type=int, default=None)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--gate-log", default=None)
    p.add_argument("--trajectory", default=None)
    p.add_argument("--manifest", default=None)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("metrics", help="report PW, wPW, term count, average PW")
    p.add_argument("input")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("compare", help="percentage reduction of file A versus file B")
    p.add_argument("input_a")
    p.add_argument("input_b")
    p.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args.raw_argv = argv
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except NumericIntegrityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (ValueError, KeyError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
