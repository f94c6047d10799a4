"""Acceptance suite: every exit criterion at its stated tolerance.

Each test prints one PASS/FAIL line (visible with `pytest -s` or `-v`).
Run with:  pytest tests/test_acceptance.py -v
"""

import itertools

import numpy as np
import pytest

import naive_solver
import oracles
from rsdmap import (
    CliffordGate,
    GateSequence,
    PauliString,
    QubitHamiltonian,
    RSDConfig,
    SamplerKind,
    SolverConfig,
    build_chain_hopping,
    build_hubbard,
    conjugate_hamiltonian,
    conjugate_pauli,
    dfs_search,
    h2_fixture_path,
    load_fermion_file,
    map_fermion_operator,
    restrict,
    rsd_optimize,
    total_pauli_weight,
    weighted_pauli_weight,
)
from rsdmap.cli import main as cli_main
from rsdmap.mappers import MAPPERS

SEED_SET = (0, 1, 2, 3, 4)  # the documented seed set for all seeded criteria


def report(name: str, ok: bool, detail: str = "") -> None:
    tag = "PASS" if ok else "FAIL"
    print(f"[{tag}] {name}" + (f": {detail}" if detail else ""))
    assert ok, f"{name}: {detail}"


def run_rsd_checked(h0, cfg):
    """rsd_optimize plus the monotonicity/conservation contract checks."""
    res = rsd_optimize(h0, cfg)
    costs = [res.records[0].cost_before] + [r.cost_after for r in res.records]
    assert all(a >= b for a, b in zip(costs, costs[1:])), "trajectory must be non-increasing"
    for r in res.records:
        if r.accepted:
            assert r.cost_after < r.cost_before, "accepted steps must strictly decrease"
        else:
            assert r.cost_after == r.cost_before
    assert len(res.hamiltonian) == len(h0), "term count must be conserved"
    return res


def test_signed_conjugation_rules():
    """All 16 CNOT conjugations and the signed H/S rules vs the dense oracle."""
    gate = CliffordGate("CNOT", 0, 1)
    cnot = oracles.cnot_matrix(2, 0, 1)
    checked = 0
    for la, lb in itertools.product("IXYZ", repeat=2):
        label = la + lb
        got, sign = conjugate_pauli(gate, PauliString.from_label(label))
        expect = cnot.conj().T @ oracles.pauli_matrix(label) @ cnot
        assert np.allclose(expect, sign * oracles.pauli_matrix(got.to_label()), atol=1e-12)
        checked += 1
    for kind in ("H", "S"):
        gm = oracles.gate_matrix(1, kind, 0)
        for letter in "IXYZ":
            got, sign = conjugate_pauli(CliffordGate(kind, 0), PauliString.from_label(letter))
            expect = gm.conj().T @ oracles.pauli_matrix(letter) @ gm
            assert np.allclose(expect, sign * oracles.pauli_matrix(got.to_label()), atol=1e-12)
            checked += 1
    report("Signed conjugation rules", checked == 24, f"{checked} conjugations verified")


def test_oracle_equivalence_500_random():
    """n <= 3: conjugate_hamiltonian matches dense U^dag H U to 1e-10, 500 pairs."""
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(500):
        n = int(rng.integers(1, 4))
        n_terms = int(rng.integers(1, min(6, 4**n) + 1))
        terms = {}
        while len(terms) < n_terms:
            terms[PauliString(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)))] = float(
                rng.normal()
            )
        h = QubitHamiltonian(n, terms)
        gates = []
        for _ in range(int(rng.integers(0, 7))):
            kind = str(rng.choice(["H", "S", "CNOT"] if n >= 2 else ["H", "S"]))
            if kind == "CNOT":
                a, b = rng.choice(n, size=2, replace=False)
                gates.append(CliffordGate("CNOT", int(a), int(b)))
            else:
                gates.append(CliffordGate(kind, int(rng.integers(n))))
        seq = GateSequence(gates)
        out = conjugate_hamiltonian(seq, h)
        u = oracles.sequence_matrix(n, [(g.kind, g.qubit_a, g.qubit_b) for g in seq])
        diff = np.abs(
            u.conj().T @ oracles.hamiltonian_matrix(h) @ u - oracles.hamiltonian_matrix(out)
        ).max()
        worst = max(worst, float(diff))
    report("Oracle equivalence (500 random pairs)", worst < 1e-10, f"max |diff| = {worst:.2e}")


def test_mapper_validity_to_16():
    """Pairwise anticommutation (and squares/independence) for n_modes 1..16."""
    pairs = 0
    for name, build in MAPPERS.items():
        for n in range(1, 17):
            table = build(n)
            table.validate()
            pairs += (2 * n) * (2 * n - 1) // 2
    report("Mapper validity n=1..16", True, f"{pairs} anticommuting pairs across 3 mappers")


def test_1d_baseline_number():
    h = map_fermion_operator("jw", build_chain_hopping(20, 1))
    ok = len(h) == 38 and total_pauli_weight(h) == 76
    report("1D baseline (N=20, r=1 under JW)", ok,
           f"{len(h)} strings, average PW {total_pauli_weight(h) / len(h)}")


def test_1d_global_optimum():
    """RSD (w=4, d=4, PW, Hamming, T=3e4): PW 56 for >=1 seed; all <= avg 1.60."""
    h0 = map_fermion_operator("jw", build_chain_hopping(20, 1))
    finals = {}
    for seed in SEED_SET:
        cfg = RSDConfig(iterations=30000, width=4, depth=4, cost_kind="pw",
                        sampler=SamplerKind("hamming", 1e-3), seed=seed)
        res = run_rsd_checked(h0, cfg)
        finals[seed] = total_pauli_weight(res.hamiltonian)
    hit_optimum = any(pw == 56 for pw in finals.values())
    all_below = all(pw / 38 <= 1.60 for pw in finals.values())
    report("1D global optimum (N=20, r=1)", hit_optimum and all_below,
           f"final PW by seed: {finals}")


def test_monotonicity_and_conservation():
    """Every RSD run in this suite goes through run_rsd_checked; spot-check one."""
    h0 = map_fermion_operator("jw", build_chain_hopping(10, 4))
    cfg = RSDConfig(iterations=500, width=4, depth=3, cost_kind="pw", seed=1)
    res = run_rsd_checked(h0, cfg)
    replay = conjugate_hamiltonian(res.gate_sequence, h0)
    report("Monotonicity & conservation", replay == res.hamiltonian,
           f"{sum(r.accepted for r in res.records)} accepted steps, "
           f"{len(res.hamiltonian)} terms conserved")


def test_solver_exhaustiveness_200_views():
    """k=2, d<=3: DFS equals independent full enumeration on 200 random views."""
    rng = np.random.default_rng(7)
    checked = 0
    for trial in range(200):
        n_terms = int(rng.integers(1, 9))
        terms = {}
        while len(terms) < n_terms:
            p = PauliString(2, int(rng.integers(4)), int(rng.integers(4)))
            terms[p] = float(rng.integers(-12, 13)) / 4.0 or 0.25
        h = QubitHamiltonian(2, terms)
        depth = int(rng.integers(0, 4))
        kind = "pw" if trial % 2 == 0 else "wpw"
        view = restrict(h, [0, 1])
        seq = dfs_search(view, SolverConfig(2, depth, kind))
        naive_cost, naive_seq = naive_solver.naive_search(
            naive_solver.entries_from_view(view), 2, depth, kind
        )
        got_cost = restrict(
            conjugate_hamiltonian(seq, h), [0, 1]
        ).cost(kind)
        assert got_cost == pytest.approx(naive_cost, abs=1e-12), (trial, kind, depth)
        assert seq == naive_seq, (trial, kind, depth)
        checked += 1
    report("Solver exhaustiveness (200 views)", checked == 200, f"{checked} views matched")


def test_desk_scale_lattice_property():
    """Chains N=6..12 (r=N-1) and 2x2 Hubbard: descent beats min(JW, BK,
    ternary) for every seed, starting from the best conventional mapping
    (initial mappings are swept the same way as solver parameters)."""
    seeds = (0, 1, 2)
    rows = []
    ok = True
    cases = [("chain", n) for n in range(6, 13)] + [("hubbard", 2)]
    for kind, n in cases:
        op = build_chain_hopping(n, n - 1) if kind == "chain" else build_hubbard(2)
        mapped = {name: map_fermion_operator(name, op) for name in MAPPERS}
        conv_pw = {name: total_pauli_weight(h) for name, h in mapped.items()}
        best_name = min(conv_pw, key=conv_pw.get)
        h0 = mapped[best_name]
        finals = []
        for seed in seeds:
            cfg = RSDConfig(iterations=1200, width=4, depth=4, cost_kind="pw", seed=seed)
            res = run_rsd_checked(h0, cfg)
            finals.append(total_pauli_weight(res.hamiltonian))
        ok = ok and all(pw < min(conv_pw.values()) for pw in finals)
        rows.append(f"{kind}{n}: conv {min(conv_pw.values())} -> rsd {finals}")
    report("Desk-scale lattice property", ok, "; ".join(rows))


def test_h2_fixture():
    """Fixture maps to 15 strings / PW 32 / wPW 3.355 +- 0.001; RSD reaches <= 26."""
    op = load_fermion_file(h2_fixture_path())
    h0 = map_fermion_operator("jw", op)
    wpw = weighted_pauli_weight(h0)
    metrics_ok = (
        len(h0) == 15
        and total_pauli_weight(h0) == 32
        and abs(wpw - 3.355) <= 1e-3
    )
    best = None
    for seed in SEED_SET:
        cfg = RSDConfig(iterations=2000, width=4, depth=4, cost_kind="pw", seed=seed)
        res = run_rsd_checked(h0, cfg)
        best = total_pauli_weight(res.hamiltonian) if best is None else min(
            best, total_pauli_weight(res.hamiltonian)
        )
        if best <= 26:
            break
    report("H2 fixture", metrics_ok and best <= 26,
           f"#PS {len(h0)}, PW {total_pauli_weight(h0)}, wPW {wpw:.4f}, RSD PW {best}")


def test_determinism_byte_identical(tmp_path):
    """Repeating a criterion run with the same seed: byte-identical artifacts."""
    fixture = tmp_path / "h2.json"
    mapped = tmp_path / "jw.json"
    fixture.write_bytes(h2_fixture_path().read_bytes())
    assert cli_main(["map", str(fixture), "--mapper", "jw", "--out", str(mapped)]) == 0
    blobs = []
    for tag in ("a", "b"):
        out = tmp_path / f"{tag}.json"
        code = cli_main([
            "optimize", str(mapped), "--out", str(out),
            "--width", "4", "--depth", "4", "--iters", "2000",
            "--cost", "pw", "--seed", "0",
        ])
        assert code == 0
        blobs.append((
            out.read_bytes(),
            (tmp_path / f"{tag}.gates.txt").read_bytes(),
            (tmp_path / f"{tag}.traj.csv").read_bytes(),
        ))
    report("Determinism (byte-identical rerun)", blobs[0] == blobs[1],
           "hamiltonian, gate log and trajectory all identical")
