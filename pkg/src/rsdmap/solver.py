"""Depth-bounded exhaustive Clifford search on a k-qubit subsystem.

The search never touches the full term list: every global term is first
restricted to its k letters on the chosen qubits and identical restrictions
are aggregated (term count and summed |coefficient|).  Conjugations
supported on the subsystem only permute these restricted words, so the
restricted cost delta equals the global cost delta exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .clifford import CliffordGate, GateSequence, conjugate_hamiltonian
from .pauli import QubitHamiltonian

COST_KINDS = ("pw", "wpw")


@dataclass(frozen=True)
class SolverConfig:
    width: int
    depth: int
    cost_kind: str = "pw"

    def __post_init__(self):
        if self.width < 1 or self.width > kernels.MAX_SOLVER_WIDTH:
            raise ValueError(f"width must be in 1..{kernels.MAX_SOLVER_WIDTH}")
        if self.depth < 0:
            raise ValueError("depth must be >= 0")
        if self.cost_kind not in COST_KINDS:
            raise ValueError(f"cost_kind must be one of {COST_KINDS}")


@dataclass(frozen=True)
class SubsystemView:
    """Aggregated k-letter restriction of a Hamiltonian.

    words/counts/abs_sums describe the distinct restricted words; term_words
    links every global term to its restricted word.  The sum of counts
    equals the number of global terms (identity restrictions included).
    """

    indices: tuple[int, ...]
    words: np.ndarray      # int32, distinct packed words
    counts: np.ndarray     # int64
    abs_sums: np.ndarray   # float64
    term_words: np.ndarray  # int32, one entry per global term

    @property
    def k(self) -> int:
        return len(self.indices)

    def values(self, cost_kind: str) -> np.ndarray:
        if cost_kind == "pw":
            return self.counts.astype(np.float64)
        return self.abs_sums

    def cost(self, cost_kind: str) -> float:
        _, wt = kernels.conjugation_tables(self.k)
        return float(self.values(cost_kind) @ wt[self.words])


def restrict_arrays(xs, zs, abs_coeffs, indices) -> SubsystemView:
    """Build the view from packed term arrays (the optimizer's fast path)."""
    idx = np.asarray(indices, dtype=np.int64)
    k = len(idx)
    if len(set(idx.tolist())) != k:
        raise ValueError("subsystem indices must be distinct")
    term_words = kernels.restrict_words(xs, zs, idx)
    n_codes = 1 << (2 * k)
    counts = np.bincount(term_words, minlength=n_codes)
    abs_sums = np.bincount(term_words, weights=abs_coeffs, minlength=n_codes)
    present = np.flatnonzero(counts)
    return SubsystemView(
        indices=tuple(int(q) for q in idx),
        words=present.astype(np.int32),
        counts=counts[present].astype(np.int64),
        abs_sums=abs_sums[present],
        term_words=term_words,
    )


def restrict(h: QubitHamiltonian, indices) -> SubsystemView:
    """Restrict a Hamiltonian to the given distinct qubit indices."""
    for q in indices:
        if not 0 <= q < h.n_qubits:
            raise ValueError(f"qubit index {q} out of range")
    xs, zs, cs = h.to_arrays()
    return restrict_arrays(xs, zs, np.abs(cs), indices)


def dfs_search_with_cost(view: SubsystemView, cfg: SolverConfig):
    """dfs_search plus the restricted cost promised by the best sequence."""
    k = view.k
    perm, wt = kernels.conjugation_tables(k)
    # the identity word never contributes cost and is fixed by conjugation
    active = view.words != 0
    words = view.words[active]
    values = view.values(cfg.cost_kind)[active]
    best_cost, best_len, best_gate_ids = kernels.dfs_minimize(
        words, values, perm, wt, cfg.depth, k
    )
    gates = kernels.gate_list(k)
    out = []
    for gid in best_gate_ids[:best_len]:
        kind, a, b = gates[gid]
        out.append(CliffordGate(kernels.GATE_NAMES[kind], a, b if kind == kernels.GATE_CNOT else None))
    return GateSequence(out), float(best_cost)


def dfs_search(view: SubsystemView, cfg: SolverConfig) -> GateSequence:
    """Best gate sequence of length <= depth on the subsystem, or empty.

    Deterministic: ties at equal cost prefer the shorter sequence, then the
    earlier sequence in gate enumeration order.  The returned sequence is
    local (qubits 0..k-1) and always strictly reduces the restricted cost.
    """
    return dfs_search_with_cost(view, cfg)[0]


def apply_to_global(h: QubitHamiltonian, indices, seq: GateSequence) -> QubitHamiltonian:
    """Apply a subsystem-local sequence to the full Hamiltonian."""
    if seq.max_qubit() >= len(indices):
        raise ValueError("sequence uses qubits outside the subsystem")
    return conjugate_hamiltonian(seq.translate(indices), h)
