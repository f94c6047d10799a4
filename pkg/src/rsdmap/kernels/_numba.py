"""Numba-jitted backend for the hot kernels.

Mirrors _numpy.py exactly: same tree traversal order, same tie-breaking,
same bit rules.  Integer costs (plain Pauli weight) are bit-identical
across the two backends.
"""

import numpy as np
from numba import njit

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


@njit(cache=True, inline="always")
def _popcount(v):
    v = v - ((v >> np.uint64(1)) & _M1)
    v = (v & _M2) + ((v >> np.uint64(2)) & _M2)
    v = (v + (v >> np.uint64(4))) & _M4
    return (v * _H01) >> np.uint64(56)


@njit(cache=True)
def term_weights(xs, zs):
    n, n_words = xs.shape
    out = np.empty(n, dtype=np.int64)
    for t in range(n):
        acc = np.uint64(0)
        for w in range(n_words):
            acc += _popcount(xs[t, w] | zs[t, w])
        out[t] = acc
    return out


@njit(cache=True)
def column_counts(xs, zs, n_qubits):
    out = np.zeros(n_qubits, dtype=np.int64)
    n, n_words = xs.shape
    for t in range(n):
        for w in range(n_words):
            nz = xs[t, w] | zs[t, w]
            base = 64 * w
            b = 0
            while nz != np.uint64(0):
                if nz & np.uint64(1):
                    out[base + b] += 1
                nz >>= np.uint64(1)
                b += 1
    return out


@njit(cache=True)
def apply_gates(xs, zs, coeffs, kinds, qa, qb):
    one = np.uint64(1)
    n = xs.shape[0]
    for g in range(kinds.shape[0]):
        a = qa[g]
        wa = a // 64
        sa = np.uint64(a % 64)
        kind = kinds[g]
        if kind == 0:  # H
            for t in range(n):
                xa = (xs[t, wa] >> sa) & one
                za = (zs[t, wa] >> sa) & one
                if xa & za:
                    coeffs[t] = -coeffs[t]
                d = (xa ^ za) << sa
                xs[t, wa] ^= d
                zs[t, wa] ^= d
        elif kind == 1:  # S
            for t in range(n):
                xa = (xs[t, wa] >> sa) & one
                za = (zs[t, wa] >> sa) & one
                if xa & (za ^ one):
                    coeffs[t] = -coeffs[t]
                zs[t, wa] ^= xa << sa
        else:  # CNOT a -> b
            b = qb[g]
            wb = b // 64
            sb = np.uint64(b % 64)
            for t in range(n):
                xa = (xs[t, wa] >> sa) & one
                za = (zs[t, wa] >> sa) & one
                xb = (xs[t, wb] >> sb) & one
                zb = (zs[t, wb] >> sb) & one
                if xa & zb & ((xb ^ za) ^ one):
                    coeffs[t] = -coeffs[t]
                xs[t, wb] ^= xa << sb
                zs[t, wa] ^= zb << sa


@njit(cache=True)
def restrict_words(xs, zs, indices):
    one = np.uint64(1)
    k = indices.shape[0]
    n = xs.shape[0]
    words = np.zeros(n, dtype=np.int32)
    for j in range(k):
        q = indices[j]
        w = q // 64
        s = np.uint64(q % 64)
        for t in range(n):
            xb = np.int32((xs[t, w] >> s) & one)
            zb = np.int32((zs[t, w] >> s) & one)
            words[t] |= (xb << j) | (zb << (j + k))
    return words


@njit(cache=True)
def dfs_minimize(words0, values, perm, wt, max_depth, width):
    m = words0.shape[0]
    n_gates = perm.shape[0]
    best_gates = np.full(max_depth, -1, dtype=np.int64)
    cost0 = 0.0
    avail0 = 0.0
    for i in range(m):
        wti = wt[words0[i]]
        cost0 += values[i] * wti
        d = wti - 1
        if d > max_depth:
            d = max_depth
        avail0 += values[i] * d
    best_cost = cost0
    best_len = 0
    if max_depth == 0 or m == 0 or avail0 == 0.0:
        return best_cost, best_len, best_gates

    words = np.empty((max_depth + 1, m), dtype=words0.dtype)
    for i in range(m):
        words[0, i] = words0[i]
    gate_at = np.full(max_depth, -1, dtype=np.int64)
    level = 0
    while level >= 0:
        gate_at[level] += 1
        g = gate_at[level]
        if g >= n_gates:
            gate_at[level] = -1
            level -= 1
            continue
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
        length = level + 1
        remaining = max_depth - length
        cost = 0.0
        avail = 0.0
        for i in range(m):
            w = perm[g, words[level, i]]
            words[level + 1, i] = w
            wti = wt[w]
            cost += values[i] * wti
            d = wti - 1
            if d > remaining:
                d = remaining
            avail += values[i] * d
        if cost < best_cost or (cost == best_cost and length < best_len):
            best_cost = cost
            best_len = length
            for j in range(max_depth):
                if j < length:
                    best_gates[j] = gate_at[j]
                else:
                    best_gates[j] = -1
        if length < max_depth:
            bound = cost - avail
            if bound < best_cost or (bound == best_cost and length + 1 < best_len):
                level += 1
    return best_cost, best_len, best_gates
