"""Randomized subsystem descent: the global greedy loop.

Each iteration samples k qubit indices, restricts the Hamiltonian there,
runs the bounded Clifford search, and accepts the update only on a strict
cost decrease, so the cost trajectory is non-increasing by construction.
All randomness flows from one seeded PCG64 generator; identical
configurations replay identical runs.
"""

from __future__ import annotations

import secrets
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .clifford import GateSequence
from .pauli import NumericIntegrityError, QubitHamiltonian
from .solver import COST_KINDS, restrict_arrays, dfs_search_with_cost, SolverConfig, SubsystemView

WPW_DECREASE_MARGIN = 1e-9

SAMPLER_NAMES = ("uniform", "hamming")
DEFAULT_HAMMING_EPSILON = 1e-3


@dataclass(frozen=True)
class SamplerKind:
    name: str = "hamming"
    epsilon: float = DEFAULT_HAMMING_EPSILON

    def __post_init__(self):
        if self.name not in SAMPLER_NAMES:
            raise ValueError(f"sampler must be one of {SAMPLER_NAMES}")
        if self.epsilon < 0:
            raise ValueError("epsilon must be non-negative")


@dataclass(frozen=True)
class RSDConfig:
    iterations: int
    width: int
    depth: int
    cost_kind: str = "pw"
    sampler: SamplerKind = SamplerKind()
    seed: int = 0
    patience: Optional[int] = None

    def __post_init__(self):
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.cost_kind not in COST_KINDS:
            raise ValueError(f"cost_kind must be one of {COST_KINDS}")
        if self.patience is not None and self.patience < 1:
            raise ValueError("patience must be >= 1 when set")
        SolverConfig(self.width, self.depth, self.cost_kind)  # bounds check


@dataclass(frozen=True)
class TrajectoryRecord:
    iteration: int
    cost_before: float
    cost_after: float
    accepted: bool
    indices: tuple[int, ...]
    gate_count: int


@dataclass(frozen=True)
class RSDResult:
    hamiltonian: QubitHamiltonian
    gate_sequence: GateSequence
    records: list[TrajectoryRecord]


def hamming_probabilities(profile, epsilon: float) -> np.ndarray:
    """P_i = (h_i + eps) / (sum_i h_i + n eps) over qubit indices."""
    h = np.asarray(profile, dtype=np.float64)
    weights = h + epsilon
    total = weights.sum()
    if total <= 0:
        raise ValueError("all sampling weights are zero; use epsilon > 0")
    return weights / total


def sample_indices(profile, k: int, sampler: SamplerKind, rng) -> np.ndarray:
    """Draw k distinct qubit indices.

    uniform: every k-subset equally likely.  hamming: sequential draws
    without replacement, each proportional to h_i + epsilon among the
    remaining indices.
    """
    n = len(profile)
    if k > n:
        raise ValueError(f"subsystem width {k} exceeds {n} qubits")
    if sampler.name == "uniform":
        return rng.choice(n, size=k, replace=False)
    weights = np.asarray(profile, dtype=np.float64) + sampler.epsilon
    out = np.empty(k, dtype=np.int64)
    for j in range(k):
        total = weights.sum()
        if total <= 0:
            raise ValueError("all sampling weights are zero; use epsilon > 0")
        pick = rng.choice(n, p=weights / total)
        out[j] = pick
        weights[pick] = 0.0
    return out


def percentage_reduction(cost_rsd: float, cost_ref: float) -> float:
    """PR = 1 - cost_rsd / cost_ref (same formula for the weighted variant)."""
    if cost_ref <= 0:
        raise ValueError("reference weight must be positive")
    return 1.0 - cost_rsd / cost_ref


def _view_cost(view: SubsystemView, cost_kind: str, wt) -> float:
    values = view.values(cost_kind)
    cost = float(values @ wt[view.words])
    return int(round(cost)) if cost_kind == "pw" else cost


def rsd_optimize(h0: QubitHamiltonian, cfg: RSDConfig) -> RSDResult:
    """Run Algorithm-style greedy descent for cfg.iterations steps.

    Returns the optimized Hamiltonian, the accumulated global gate sequence
    (replaying it on h0 reproduces the output exactly) and one trajectory
    record per executed iteration.
    """
    n = h0.n_qubits
    if cfg.width > n:
        raise ValueError(f"width {cfg.width} exceeds {n} qubits")
    xs, zs, coeffs = h0.to_arrays()
    abs_coeffs = np.abs(coeffs)
    weights = kernels.term_weights(xs, zs)
    if cfg.cost_kind == "pw":
        global_cost = int(weights.sum())
    else:
        global_cost = float(abs_coeffs @ weights)
    margin = 0 if cfg.cost_kind == "pw" else WPW_DECREASE_MARGIN

    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    solver_cfg = SolverConfig(cfg.width, cfg.depth, cfg.cost_kind)
    _, wt = kernels.conjugation_tables(cfg.width)

    profile = None  # recomputed lazily after accepted updates
    records: list[TrajectoryRecord] = []
    all_gates: list = []
    rejections_in_a_row = 0

    for t in range(1, cfg.iterations + 1):
        if cfg.sampler.name == "hamming" and profile is None:
            profile = kernels.column_counts(xs, zs, n)
        elif profile is None:
            profile = np.zeros(n, dtype=np.int64)
        idx = sample_indices(profile, cfg.width, cfg.sampler, rng)

        view = restrict_arrays(xs, zs, abs_coeffs, idx)
        cost_restricted = _view_cost(view, cfg.cost_kind, wt)
        seq, promised = dfs_search_with_cost(view, solver_cfg)

        # acceptance rule: strict decrease, with a float margin for wPW
        accepted = len(seq) > 0 and promised < cost_restricted - margin
        new_cost = global_cost
        if accepted:
            translated = seq.translate(idx)
            kinds, qa, qb = translated.to_arrays()
            kernels.apply_gates(xs, zs, coeffs, kinds, qa, qb)
            after = restrict_arrays(xs, zs, abs_coeffs, idx)
            cost_after_restricted = _view_cost(after, cfg.cost_kind, wt)
            new_cost = global_cost - cost_restricted + cost_after_restricted
            drift = abs(cost_after_restricted - promised)
            if not new_cost < global_cost or drift > 1e-6:
                raise NumericIntegrityError(
                    "subsystem solver promised an improvement that did not "
                    f"materialize globally at iteration {t}"
                )
            all_gates.extend(translated.gates)
            profile = None
        else:
            seq = GateSequence()

        records.append(
            TrajectoryRecord(
                iteration=t,
                cost_before=global_cost,
                cost_after=new_cost,
                accepted=accepted,
                indices=tuple(int(q) for q in idx),
                gate_count=len(seq),
            )
        )
        global_cost = new_cost

        if accepted:
            rejections_in_a_row = 0
        else:
            rejections_in_a_row += 1
            if cfg.patience is not None and rejections_in_a_row >= cfg.patience:
                break

    h_out = QubitHamiltonian.from_arrays(n, xs, zs, coeffs)
    assert len(h_out) == len(h0), "term count must be conserved"
    return RSDResult(h_out, GateSequence(all_gates), records)


def format_cost(value, cost_kind: str) -> str:
    if cost_kind == "pw":
        return str(int(value))
    return repr(float(value))


def write_trajectory_csv(path, records, cost_kind: str) -> None:
    with open(path, "w") as fh:
        fh.write("iter,cost_before,cost_after,accepted,gate_count,indices\n")
        for r in records:
            fh.write(
                f"{r.iteration},{format_cost(r.cost_before, cost_kind)},"
                f"{format_cost(r.cost_after, cost_kind)},{int(r.accepted)},"
                f"{r.gate_count},{';'.join(str(q) for q in r.indices)}\n"
            )


def draw_seed() -> int:
    """Fresh 63-bit seed from the OS, used when the caller supplies none."""
    return secrets.randbits(63)
