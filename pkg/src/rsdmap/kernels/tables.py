"""Gate enumeration and conjugation lookup tables for k-qubit subsystems.

A restricted Pauli word on k qubits is packed into one integer: x bits
occupy positions 0..k-1, z bits positions k..2k-1.  Conjugation by a
Clifford gate permutes these 4^k words (signs are irrelevant for cost
evaluation and are tracked only when gates are applied globally).
"""

from functools import lru_cache

import numpy as np

GATE_H = 0
GATE_S = 1
GATE_CNOT = 2

GATE_NAMES = {GATE_H: "H", GATE_S: "S", GATE_CNOT: "CNOT"}

# Lookup tables scale as 4^k per gate; width 8 matches the largest solver
# used in practice and keeps the table set under ~40 MB.
MAX_SOLVER_WIDTH = 8


def gate_list(width):
    """Subsystem gate set in canonical enumeration order.

    All H by qubit, then all S, then CNOT in (control, target) lexicographic
    order.  This order defines the solver's tie-breaking.
    """
    gates = [(GATE_H, q, -1) for q in range(width)]
    gates += [(GATE_S, q, -1) for q in range(width)]
    gates += [
        (GATE_CNOT, c, t)
        for c in range(width)
        for t in range(width)
        if t != c
    ]
    return gates


@lru_cache(maxsize=None)
def conjugation_tables(width):
    """Return (perm, wt) for a k-qubit subsystem.

    perm[g, w] is the packed word obtained by conjugating word w with gate g
    (sign dropped); wt[w] is the Hamming weight of word w.
    """
    if not 1 <= width <= MAX_SOLVER_WIDTH:
        raise ValueError(f"solver width must be in 1..{MAX_SOLVER_WIDTH}, got {width}")
    n_codes = 1 << (2 * width)
    codes = np.arange(n_codes, dtype=np.int64)
    x = codes & ((1 << width) - 1)
    z = codes >> width
    wt = np.bitwise_count(x | z).astype(np.int64)

    gates = gate_list(width)
    perm = np.empty((len(gates), n_codes), dtype=np.int32)
    for gi, (kind, a, b) in enumerate(gates):
        xa = (x >> a) & 1
        za = (z >> a) & 1
        if kind == GATE_H:
            d = xa ^ za
            nx = x ^ (d << a)
            nz = z ^ (d << a)
        elif kind == GATE_S:
            nx = x
            nz = z ^ (xa << a)
        else:  # CNOT a -> b: x_b ^= x_a, z_a ^= z_b
            zb = (z >> b) & 1
            nx = x ^ (xa << b)
            nz = z ^ (zb << a)
        perm[gi] = nx | (nz << width)
    return perm, wt
