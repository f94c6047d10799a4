"""Bit-packed Pauli-string algebra and sparse qubit Hamiltonians.

Pauli words are stored symplectically as two bit vectors (x, z) held in
arbitrary-precision integers: bit q of x is set iff the letter at qubit q
has an X component, bit q of z iff it has a Z component, so
(0,0)=I, (1,0)=X, (1,1)=Y, (0,1)=Z.  Qubit 0 is the leftmost character
in string form.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

COEFF_PRUNE_TOL = 1e-12
IMAG_TOL = 1e-9

_CHAR_TO_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_TO_CHAR = {v: k for k, v in _CHAR_TO_BITS.items()}


class FormatError(ValueError):
    """Raised on malformed input files (CLI exit code 3)."""


class NumericIntegrityError(ValueError):
    """Raised when imaginary residue exceeds tolerance (CLI exit code 4)."""


@dataclass(frozen=True, slots=True)
class PauliString:
    """An n-qubit Pauli word in symplectic (x, z) form.

    Equality and hashing depend only on (n_qubits, x, z); instances are
    immutable and safe to share across threads.
    """

    n_qubits: int
    x: int
    z: int

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        mask = (1 << self.n_qubits) - 1
        if self.x & ~mask or self.z & ~mask:
            raise ValueError("bit set beyond n_qubits")

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliString":
        return cls(n_qubits, 0, 0)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Parse a string over {I,X,Y,Z}; qubit 0 is the leftmost character."""
        if not label:
            raise ValueError("empty Pauli label")
        x = z = 0
        for q, ch in enumerate(label):
            try:
                xb, zb = _CHAR_TO_BITS[ch]
            except KeyError:
                raise ValueError(f"invalid Pauli character {ch!r}") from None
            x |= xb << q
            z |= zb << q
        return cls(len(label), x, z)

    def to_label(self) -> str:
        return "".join(
            _BITS_TO_CHAR[((self.x >> q) & 1, (self.z >> q) & 1)]
            for q in range(self.n_qubits)
        )

    def letter(self, q: int) -> str:
        return _BITS_TO_CHAR[((self.x >> q) & 1, (self.z >> q) & 1)]

    def weight(self) -> int:
        """Number of non-identity tensor factors."""
        return (self.x | self.z).bit_count()

    def commutes_with(self, other: "PauliString") -> bool:
        """Symplectic form: words commute iff the overlap parity is even."""
        par = (self.x & other.z).bit_count() + (self.z & other.x).bit_count()
        return par % 2 == 0

    def __repr__(self):
        return f"PauliString({self.to_label()!r})"


@dataclass(frozen=True, slots=True)
class PhasedPauli:
    """A Pauli word with an attached power of the imaginary unit, i^phase_power."""

    pauli: PauliString
    phase_power: int

    def __post_init__(self):
        object.__setattr__(self, "phase_power", self.phase_power % 4)

    def coefficient(self) -> complex:
        return 1j ** self.phase_power

    def __mul__(self, other: "PhasedPauli") -> "PhasedPauli":
        prod = pauli_product(self.pauli, other.pauli)
        return PhasedPauli(prod.pauli, prod.phase_power + self.phase_power + other.phase_power)


def weight(p: PauliString) -> int:
    return p.weight()


def pauli_product(a: PauliString, b: PauliString) -> PhasedPauli:
    """Multiply two Pauli words: matrix(a) @ matrix(b) = i^phase * matrix(result).

    The phase exponent follows from writing each Hermitian word as
    prod_q i^{x_q z_q} X^{x_q} Z^{z_q} and commuting the Z factors of `a`
    past the X factors of `b`.
    """
    if a.n_qubits != b.n_qubits:
        raise ValueError(f"qubit count mismatch: {a.n_qubits} vs {b.n_qubits}")
    x3 = a.x ^ b.x
    z3 = a.z ^ b.z
    phase = (
        (a.x & a.z).bit_count()
        + (b.x & b.z).bit_count()
        + 2 * (a.z & b.x).bit_count()
        - (x3 & z3).bit_count()
    ) % 4
    return PhasedPauli(PauliString(a.n_qubits, x3, z3), phase)


class QubitHamiltonian:
    """Sparse real-coefficient operator: a map from PauliString to coefficient.

    Terms with |coefficient| below COEFF_PRUNE_TOL are dropped on
    construction.  Instances are immutable after construction; the internal
    term order is canonical (lexicographic on the letter string) so that
    iteration and serialization are deterministic.
    """

    __slots__ = ("n_qubits", "_terms")

    def __init__(self, n_qubits: int, terms=None):
        if n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        self.n_qubits = n_qubits
        cleaned = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for p, c in items:
                if isinstance(p, str):
                    p = PauliString.from_label(p)
                if p.n_qubits != n_qubits:
                    raise ValueError("term qubit count mismatch")
                c = float(c)
                cleaned[p] = cleaned.get(p, 0.0) + c
        self._terms = {
            p: c
            for p, c in sorted(cleaned.items(), key=lambda kv: kv[0].to_label())
            if abs(c) >= COEFF_PRUNE_TOL
        }

    def items(self):
        return self._terms.items()

    def coefficient(self, p: PauliString) -> float:
        return self._terms.get(p, 0.0)

    def __len__(self):
        return len(self._terms)

    def __contains__(self, p):
        return p in self._terms

    def __eq__(self, other):
        if not isinstance(other, QubitHamiltonian):
            return NotImplemented
        return self.n_qubits == other.n_qubits and self._terms == other._terms

    def __repr__(self):
        return f"QubitHamiltonian(n_qubits={self.n_qubits}, terms={len(self._terms)})"

    def allclose(self, other: "QubitHamiltonian", tol: float = 1e-10) -> bool:
        if self.n_qubits != other.n_qubits:
            return False
        keys = set(self._terms) | set(other._terms)
        return all(abs(self.coefficient(p) - other.coefficient(p)) <= tol for p in keys)

    # -- packed array interchange (used by the kernels) ------------------

    def to_arrays(self):
        """Return (x, z, coeffs) with x, z uint64 arrays of shape (terms, words)."""
        n_words = max(1, (self.n_qubits + 63) // 64)
        n = len(self._terms)
        xs = np.zeros((n, n_words), dtype=np.uint64)
        zs = np.zeros((n, n_words), dtype=np.uint64)
        cs = np.empty(n, dtype=np.float64)
        limb_mask = (1 << 64) - 1
        for t, (p, c) in enumerate(self._terms.items()):
            x, z = p.x, p.z
            for w in range(n_words):
                xs[t, w] = (x >> (64 * w)) & limb_mask
                zs[t, w] = (z >> (64 * w)) & limb_mask
            cs[t] = c
        return xs, zs, cs

    @classmethod
    def from_arrays(cls, n_qubits, xs, zs, cs) -> "QubitHamiltonian":
        terms = {}
        for t in range(xs.shape[0]):
            x = z = 0
            for w in range(xs.shape[1]):
                x |= int(xs[t, w]) << (64 * w)
                z |= int(zs[t, w]) << (64 * w)
            p = PauliString(n_qubits, x, z)
            if p in terms:
                raise AssertionError("Pauli word collision while rebuilding term map")
            terms[p] = float(cs[t])
        return cls(n_qubits, terms)

    # -- JSON file format -------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "n_qubits": self.n_qubits,
            "terms": [{"c": c, "p": p.to_label()} for p, c in self._terms.items()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), indent=1)

    @classmethod
    def from_json_dict(cls, obj) -> "QubitHamiltonian":
        try:
            n_qubits = obj["n_qubits"]
            raw = obj["terms"]
            if not isinstance(n_qubits, int) or n_qubits < 1:
                raise FormatError("n_qubits must be a positive integer")
            terms = []
            for entry in raw:
                c = entry["c"]
                p = entry["p"]
                if not isinstance(c, (int, float)) or not math.isfinite(c):
                    raise FormatError(f"non-finite coefficient {c!r}")
                if not isinstance(p, str) or len(p) != n_qubits:
                    raise FormatError(f"Pauli label {p!r} does not match n_qubits={n_qubits}")
                terms.append((PauliString.from_label(p), float(c)))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"malformed qubit Hamiltonian: {exc}") from exc
        return cls(n_qubits, terms)

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.dumps())
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "QubitHamiltonian":
        try:
            with open(path) as fh:
                obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON in {path}: {exc}") from exc
        return cls.from_json_dict(obj)


def total_pauli_weight(h: QubitHamiltonian) -> int:
    """Sum of wt(P) over terms; independent of coefficients."""
    return sum(p.weight() for p, _ in h.items())


def weighted_pauli_weight(h: QubitHamiltonian) -> float:
    """Sum of |c| * wt(P) over terms."""
    return float(sum(abs(c) * p.weight() for p, c in h.items()))


def hamming_profile(h: QubitHamiltonian) -> np.ndarray:
    """Per-qubit count of terms acting nontrivially there."""
    out = np.zeros(h.n_qubits, dtype=np.int64)
    for p, _ in h.items():
        support = p.x | p.z
        while support:
            low = support & -support
            out[low.bit_length() - 1] += 1
            support ^= low
    return out
