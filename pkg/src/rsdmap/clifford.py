"""Clifford conjugation of Pauli strings and Hamiltonians with sign tracking.

Conjugation is Heisenberg-picture: a gate sequence [V1, V2, ..., Vm]
transforms P to U† P U with U = V1 V2 ... Vm, i.e. the per-gate rules are
applied in listed order.  Single-qubit rules:

    H† X H = Z    H† Y H = -Y    H† Z H = X
    S† X S = -Y   S† Y S = X     S† Z S = Z

CNOT signs are not printed in the usual conjugation table; the bit rule
used here (flip iff x_c & z_t & ~(x_t ^ z_c)) was derived from the dense
two-qubit matrix oracle and is pinned by tests on all 16 words.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from . import kernels
from .pauli import FormatError, PauliString, QubitHamiltonian

_KIND_CODE = {"H": kernels.GATE_H, "S": kernels.GATE_S, "CNOT": kernels.GATE_CNOT}


@dataclass(frozen=True, slots=True)
class CliffordGate:
    """One of H <q>, S <q>, CNOT <control> <target>."""

    kind: str
    qubit_a: int
    qubit_b: Optional[int] = None

    def __post_init__(self):
        if self.kind not in _KIND_CODE:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if self.kind == "CNOT":
            if self.qubit_b is None or self.qubit_b == self.qubit_a:
                raise ValueError("CNOT requires two distinct qubits")
        elif self.qubit_b is not None:
            raise ValueError(f"{self.kind} takes a single qubit")
        if self.qubit_a < 0 or (self.qubit_b is not None and self.qubit_b < 0):
            raise ValueError("negative qubit index")

    def to_line(self) -> str:
        if self.kind == "CNOT":
            return f"CNOT {self.qubit_a} {self.qubit_b}"
        return f"{self.kind} {self.qubit_a}"

    @classmethod
    def from_line(cls, line: str) -> "CliffordGate":
        parts = line.split()
        try:
            if parts[0] == "CNOT":
                return cls("CNOT", int(parts[1]), int(parts[2]))
            if parts[0] in ("H", "S") and len(parts) == 2:
                return cls(parts[0], int(parts[1]))
        except (IndexError, ValueError):
            pass
        raise FormatError(f"bad gate line {line!r}")


class GateSequence:
    """Ordered Clifford gates; conjugation applies them left to right."""

    __slots__ = ("gates",)

    def __init__(self, gates: Iterable[CliffordGate] = ()):
        self.gates = tuple(gates)

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __eq__(self, other):
        return isinstance(other, GateSequence) and self.gates == other.gates

    def __repr__(self):
        return f"GateSequence({[g.to_line() for g in self.gates]})"

    def __add__(self, other: "GateSequence") -> "GateSequence":
        return GateSequence(self.gates + other.gates)

    def max_qubit(self) -> int:
        hi = -1
        for g in self.gates:
            hi = max(hi, g.qubit_a, g.qubit_b if g.qubit_b is not None else -1)
        return hi

    def inverse(self) -> "GateSequence":
        """Reversed sequence with S replaced by S^3 (H, CNOT are self-inverse)."""
        inv = []
        for g in reversed(self.gates):
            if g.kind == "S":
                inv.extend([g, g, g])
            else:
                inv.append(g)
        return GateSequence(inv)

    def translate(self, indices) -> "GateSequence":
        """Map subsystem-local qubit numbers through `indices` to global ones."""
        out = []
        for g in self.gates:
            b = None if g.qubit_b is None else int(indices[g.qubit_b])
            out.append(CliffordGate(g.kind, int(indices[g.qubit_a]), b))
        return GateSequence(out)

    def to_arrays(self):
        n = len(self.gates)
        kinds = np.empty(n, dtype=np.int8)
        qa = np.empty(n, dtype=np.int64)
        qb = np.full(n, -1, dtype=np.int64)
        for i, g in enumerate(self.gates):
            kinds[i] = _KIND_CODE[g.kind]
            qa[i] = g.qubit_a
            if g.qubit_b is not None:
                qb[i] = g.qubit_b
        return kinds, qa, qb

    # -- gate-log text format ------------------------------------------

    def dumps(self) -> str:
        return "".join(g.to_line() + "\n" for g in self.gates)

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.dumps())

    @classmethod
    def load(cls, path) -> "GateSequence":
        with open(path) as fh:
            lines = [ln.strip() for ln in fh]
        return cls(CliffordGate.from_line(ln) for ln in lines if ln)


def conjugate_pauli(gate: CliffordGate, p: PauliString):
    """Return (g† p g, sign) with sign in {+1, -1}."""
    n = p.n_qubits
    a = gate.qubit_a
    if a >= n or (gate.qubit_b is not None and gate.qubit_b >= n):
        raise IndexError(f"gate {gate.to_line()} out of range for {n} qubits")
    x, z = p.x, p.z
    xa = (x >> a) & 1
    za = (z >> a) & 1
    sign = 1
    if gate.kind == "H":
        if xa & za:
            sign = -1
        d = (xa ^ za) << a
        x ^= d
        z ^= d
    elif gate.kind == "S":
        if xa & (za ^ 1):
            sign = -1
        z ^= xa << a
    else:
        b = gate.qubit_b
        xb = (x >> b) & 1
        zb = (z >> b) & 1
        if xa & zb & ((xb ^ za) ^ 1):
            sign = -1
        x ^= xa << b
        z ^= zb << a
    return PauliString(n, x, z), sign


def conjugate_hamiltonian(seq: GateSequence, h: QubitHamiltonian) -> QubitHamiltonian:
    """Conjugate every term by the full sequence; term count is preserved."""
    if seq.max_qubit() >= h.n_qubits:
        raise IndexError("gate index out of range for Hamiltonian")
    if not len(seq) or not len(h):
        return h
    xs, zs, cs = h.to_arrays()
    kinds, qa, qb = seq.to_arrays()
    kernels.apply_gates(xs, zs, cs, kinds, qa, qb)
    out = QubitHamiltonian.from_arrays(h.n_qubits, xs, zs, cs)
    assert len(out) == len(h), "Clifford conjugation must preserve term count"
    return out
