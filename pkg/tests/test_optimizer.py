"""rsd_optimizer: sampling, the greedy loop, trajectories, determinism."""

import numpy as np
import pytest

from rsdmap import (
    QubitHamiltonian,
    RSDConfig,
    SamplerKind,
    build_chain_hopping,
    conjugate_hamiltonian,
    hamming_probabilities,
    hamming_profile,
    map_fermion_operator,
    percentage_reduction,
    rsd_optimize,
    sample_indices,
    total_pauli_weight,
    weighted_pauli_weight,
)
from rsdmap.optimize import write_trajectory_csv


def test_hamming_probability_formula():
    assert hamming_probabilities([1, 2], 0.0) == pytest.approx([1 / 3, 2 / 3])
    # epsilon smooths towards uniform
    p = hamming_probabilities([0, 4], 1e-9)
    assert p[1] == pytest.approx(1.0, abs=1e-6)
    with pytest.raises(ValueError):
        hamming_probabilities([0, 0], 0.0)


def test_sample_full_set_when_k_equals_n():
    rng = np.random.default_rng(0)
    for sampler in (SamplerKind("uniform"), SamplerKind("hamming", 1e-3)):
        idx = sample_indices([3, 1, 2], 3, sampler, rng)
        assert sorted(idx.tolist()) == [0, 1, 2]


def test_hamming_sampler_distribution():
    rng = np.random.default_rng(42)
    sampler = SamplerKind("hamming", 0.0)
    draws = [int(sample_indices([1, 2], 1, sampler, rng)[0]) for _ in range(6000)]
    freq1 = sum(d == 1 for d in draws) / len(draws)
    assert freq1 == pytest.approx(2 / 3, abs=0.02)


def test_hamming_sampler_degenerate_profile():
    rng = np.random.default_rng(1)
    sampler = SamplerKind("hamming", 1e-6)
    idx = sample_indices([0, 7, 0], 1, sampler, rng)
    assert idx[0] == 1  # epsilon -> 0 limit concentrates on the loaded qubit


def test_uniform_sampler_covers_subsets():
    rng = np.random.default_rng(9)
    seen = set()
    for _ in range(300):
        idx = sample_indices([0] * 4, 2, SamplerKind("uniform"), rng)
        assert len(set(idx.tolist())) == 2
        seen.add(frozenset(idx.tolist()))
    assert len(seen) == 6  # all C(4,2) subsets show up


def test_sampler_validation():
    rng = np.random.default_rng(0)
    with pytest.raises(ValueError):
        sample_indices([1, 1], 3, SamplerKind("uniform"), rng)
    with pytest.raises(ValueError):
        SamplerKind("ml")
    with pytest.raises(ValueError):
        SamplerKind("hamming", -1.0)


def test_percentage_reduction():
    assert percentage_reduction(56, 76) == pytest.approx(1 - 56 / 76)
    assert percentage_reduction(5, 5) == 0.0
    assert percentage_reduction(26, 32) == pytest.approx(0.1875)
    with pytest.raises(ValueError):
        percentage_reduction(1, 0)


def test_single_step_xx():
    h = QubitHamiltonian(2, {"XX": 1.0})
    cfg = RSDConfig(iterations=1, width=2, depth=1, cost_kind="pw", seed=0)
    res = rsd_optimize(h, cfg)
    assert total_pauli_weight(res.hamiltonian) == 1
    assert res.records[0].accepted
    assert res.records[0].cost_before == 2 and res.records[0].cost_after == 1


def test_already_optimal_input_rejects_everything():
    h = QubitHamiltonian(3, {"XII": 1.0, "IYI": 0.5, "IIZ": -2.0})
    cfg = RSDConfig(iterations=25, width=2, depth=3, cost_kind="pw", seed=7)
    res = rsd_optimize(h, cfg)
    assert res.hamiltonian == h
    assert not any(r.accepted for r in res.records)
    assert len(res.gate_sequence) == 0


def test_trajectory_monotone_and_consistent():
    h0 = map_fermion_operator("jw", build_chain_hopping(8, 3))
    cfg = RSDConfig(iterations=150, width=3, depth=3, cost_kind="pw", seed=11)
    res = rsd_optimize(h0, cfg)
    costs = [res.records[0].cost_before] + [r.cost_after for r in res.records]
    assert all(a >= b for a, b in zip(costs, costs[1:]))
    for r in res.records:
        if r.accepted:
            assert r.cost_after < r.cost_before
            assert r.gate_count > 0
        else:
            assert r.cost_after == r.cost_before
    assert costs[-1] == total_pauli_weight(res.hamiltonian)
    assert len(res.hamiltonian) == len(h0)


def test_replay_reproduces_output():
    h0 = map_fermion_operator("jw", build_chain_hopping(6, 2))
    cfg = RSDConfig(iterations=80, width=3, depth=2, cost_kind="pw", seed=3)
    res = rsd_optimize(h0, cfg)
    assert conjugate_hamiltonian(res.gate_sequence, h0) == res.hamiltonian


def test_seed_determinism():
    h0 = map_fermion_operator("jw", build_chain_hopping(7, 2))
    cfg = RSDConfig(iterations=60, width=3, depth=2, cost_kind="pw", seed=123)
    a = rsd_optimize(h0, cfg)
    b = rsd_optimize(h0, cfg)
    assert a.hamiltonian == b.hamiltonian
    assert a.gate_sequence == b.gate_sequence
    assert a.records == b.records
    c = rsd_optimize(h0, RSDConfig(iterations=60, width=3, depth=2, cost_kind="pw", seed=124))
    assert (c.records != a.records) or (c.hamiltonian != a.hamiltonian)


def test_wpw_cost_descends():
    h0 = map_fermion_operator("jw", build_chain_hopping(6, 5))
    cfg = RSDConfig(iterations=120, width=3, depth=3, cost_kind="wpw", seed=5)
    res = rsd_optimize(h0, cfg)
    assert weighted_pauli_weight(res.hamiltonian) < weighted_pauli_weight(h0) - 1e-9
    final = res.records[-1].cost_after
    assert final == pytest.approx(weighted_pauli_weight(res.hamiltonian), abs=1e-9)


def test_wpw_sub_margin_improvement_rejected():
    # the only possible gain is |c| = 1e-10, below the 1e-9 strict-decrease
    # margin: the step must be rejected cleanly (not applied, not an error),
    # while the same Hamiltonian under PW cost is optimized normally
    h = QubitHamiltonian(2, {"ZZ": 1e-10})
    cfg = RSDConfig(iterations=3, width=2, depth=1, cost_kind="wpw", seed=0)
    res = rsd_optimize(h, cfg)
    assert res.hamiltonian == h
    assert not any(r.accepted for r in res.records)
    assert all(r.gate_count == 0 for r in res.records)

    res_pw = rsd_optimize(h, RSDConfig(iterations=3, width=2, depth=1, cost_kind="pw", seed=0))
    assert total_pauli_weight(res_pw.hamiltonian) == 1


def test_metric_consistency_midway():
    # replay the gate log prefix and recompute the metric at a checkpoint
    h0 = map_fermion_operator("jw", build_chain_hopping(6, 2))
    cfg = RSDConfig(iterations=40, width=3, depth=2, cost_kind="pw", seed=2)
    res = rsd_optimize(h0, cfg)
    accepted = [r for r in res.records if r.accepted]
    if accepted:
        mid = accepted[len(accepted) // 2]
        gates_so_far = sum(r.gate_count for r in res.records if r.iteration <= mid.iteration)
        from rsdmap import GateSequence

        prefix = GateSequence(res.gate_sequence.gates[:gates_so_far])
        h_mid = conjugate_hamiltonian(prefix, h0)
        assert total_pauli_weight(h_mid) == mid.cost_after


def test_patience_stops_early():
    h = QubitHamiltonian(2, {"XI": 1.0, "IZ": 1.0})  # nothing to improve
    cfg = RSDConfig(iterations=500, width=2, depth=2, cost_kind="pw", seed=0, patience=5)
    res = rsd_optimize(h, cfg)
    assert len(res.records) == 5


def test_k_equals_n_degenerates_to_global_solve():
    h0 = map_fermion_operator("jw", build_chain_hopping(4, 1))
    cfg = RSDConfig(iterations=10, width=4, depth=3, cost_kind="pw", seed=0)
    res = rsd_optimize(h0, cfg)
    for r in res.records:
        assert sorted(r.indices) == [0, 1, 2, 3]


def test_beyond_64_qubits_end_to_end():
    # 6x6 Hubbard has 72 modes, so packed terms span two 64-bit limbs
    from rsdmap import build_hubbard

    h0 = map_fermion_operator("jw", build_hubbard(6))
    assert h0.n_qubits == 72
    cfg = RSDConfig(iterations=30, width=4, depth=2, cost_kind="pw", seed=0)
    res = rsd_optimize(h0, cfg)
    assert total_pauli_weight(res.hamiltonian) < total_pauli_weight(h0)
    assert conjugate_hamiltonian(res.gate_sequence, h0) == res.hamiltonian


def test_config_validation():
    h = QubitHamiltonian(2, {"XX": 1.0})
    with pytest.raises(ValueError):
        RSDConfig(iterations=0, width=2, depth=1)
    with pytest.raises(ValueError):
        RSDConfig(iterations=1, width=2, depth=1, cost_kind="nope")
    with pytest.raises(ValueError):
        RSDConfig(iterations=1, width=2, depth=1, patience=0)
    with pytest.raises(ValueError):
        rsd_optimize(h, RSDConfig(iterations=1, width=3, depth=1))


def test_trajectory_csv_format(tmp_path):
    h0 = map_fermion_operator("jw", build_chain_hopping(5, 1))
    cfg = RSDConfig(iterations=12, width=2, depth=2, cost_kind="pw", seed=4)
    res = rsd_optimize(h0, cfg)
    path = tmp_path / "traj.csv"
    write_trajectory_csv(path, res.records, "pw")
    lines = path.read_text().splitlines()
    assert lines[0] == "iter,cost_before,cost_after,accepted,gate_count,indices"
    assert len(lines) == 13
    first = lines[1].split(",")
    assert first[0] == "1" and first[3] in ("0", "1")
    assert ";" in first[5] or first[5].isdigit()
