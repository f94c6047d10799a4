"""Pure-numpy reference backend for the hot kernels.

Semantically identical to the numba backend; the depth-first search walks
the same tree in the same order so gate sequences and integer costs match
exactly.  Kept as the fallback and as the baseline in benchmarks.
"""

import numpy as np

_ONE = np.uint64(1)


def term_weights(xs, zs):
    """Hamming weight of every packed term; shape (terms,) int64."""
    return np.bitwise_count(xs | zs).sum(axis=1).astype(np.int64)


def column_counts(xs, zs, n_qubits):
    """Per-qubit count of terms with a non-identity letter there."""
    nz = xs | zs
    out = np.empty(n_qubits, dtype=np.int64)
    for q in range(n_qubits):
        w, b = divmod(q, 64)
        out[q] = int(((nz[:, w] >> np.uint64(b)) & _ONE).sum())
    return out


def apply_gates(xs, zs, coeffs, kinds, qa, qb):
    """Conjugate every packed term by the gate list, in order, in place.

    Sign flips are folded into coeffs.  Update rules (qubit a; CNOT control a,
    target b), validated against the dense-matrix oracle:
      H: swap x,z at a; sign flips iff letter is Y.
      S: z_a ^= x_a; sign flips iff letter is X.
      CNOT: x_b ^= x_a, z_a ^= z_b; sign flips iff x_a & z_b & ~(x_b ^ z_a).
    """
    for g in range(len(kinds)):
        a = int(qa[g])
        wa, ba = divmod(a, 64)
        sa = np.uint64(ba)
        xa = (xs[:, wa] >> sa) & _ONE
        za = (zs[:, wa] >> sa) & _ONE
        kind = int(kinds[g])
        if kind == 0:
            flip = xa & za
            d = (xa ^ za) << sa
            xs[:, wa] ^= d
            zs[:, wa] ^= d
        elif kind == 1:
            flip = xa & (za ^ _ONE)
            zs[:, wa] ^= xa << sa
        else:
            b = int(qb[g])
            wb, bb = divmod(b, 64)
            sb = np.uint64(bb)
            xb = (xs[:, wb] >> sb) & _ONE
            zb = (zs[:, wb] >> sb) & _ONE
            flip = xa & zb & ((xb ^ za) ^ _ONE)
            xs[:, wb] ^= xa << sb
            zs[:, wa] ^= zb << sa
        coeffs[flip.astype(bool)] *= -1.0


def restrict_words(xs, zs, indices):
    """Packed k-letter restriction of every term at the given qubit columns."""
    k = len(indices)
    words = np.zeros(xs.shape[0], dtype=np.int64)
    for j, q in enumerate(indices):
        w, b = divmod(int(q), 64)
        s = np.uint64(b)
        xb = ((xs[:, w] >> s) & _ONE).astype(np.int64)
        zb = ((zs[:, w] >> s) & _ONE).astype(np.int64)
        words |= (xb << j) | (zb << (j + k))
    return words.astype(np.int32)


def dfs_minimize(words0, values, perm, wt, max_depth, width):
    """Depth-first search over gate sequences of length <= max_depth.

    Returns (best_cost, best_len, best_gates); best_gates holds gate ids
    padded with -1.  The empty sequence (initial cost) is the incumbent, so
    only strictly improving sequences are ever returned.  Ties prefer the
    shorter sequence, then the earlier sequence in enumeration order.

    Subtrees are cut with an admissible bound: conjugation never maps a
    non-identity word to the identity and each gate lowers a word's weight
    by at most one, so sum(v * min(wt - 1, remaining)) caps the achievable
    reduction.  A tied bound still descends while a shorter tie could win.
    """
    m = words0.shape[0]
    n_gates = perm.shape[0]
    best_gates = np.full(max_depth, -1, dtype=np.int64)
    cost0 = float(values @ wt[words0]) if m else 0.0
    best_cost = cost0
    best_len = 0
    if max_depth == 0 or m == 0:
        return best_cost, best_len, best_gates
    if float(values @ np.minimum(wt[words0] - 1, max_depth)) == 0.0:
        return best_cost, best_len, best_gates  # already at the weight floor

    words = np.empty((max_depth + 1, m), dtype=words0.dtype)
    words[0] = words0
    gate_at = np.full(max_depth, -1, dtype=np.int64)
    level = 0
    while level >= 0:
        gate_at[level] += 1
        g = gate_at[level]
        if g >= n_gates:
            gate_at[level] = -1
            level -= 1
            continue
        # prune: self-inverse gate (H, CNOT) repeated, or a fourth S in a row
        if level >= 1 and gate_at[level - 1] == g and (g < width or g >= 2 * width):
            continue
        if (
            width <= g < 2 * width
            and level >= 3
            and gate_at[level - 1] == g
            and gate_at[level - 2] == g
            and gate_at[level - 3] == g
        ):
            continue
        np.take(perm[g], words[level], out=words[level + 1])
        wtv = wt[words[level + 1]]
        cost = float(values @ wtv)
        length = level + 1
        if cost < best_cost or (cost == best_cost and length < best_len):
            best_cost = cost
            best_len = length
            best_gates[:length] = gate_at[:length]
            best_gates[length:] = -1
        if length < max_depth:
            remaining = max_depth - length
            bound = cost - float(values @ np.minimum(wtv - 1, remaining))
            if bound < best_cost or (bound == best_cost and length + 1 < best_len):
                level += 1
    return best_cost, best_len, best_gates
