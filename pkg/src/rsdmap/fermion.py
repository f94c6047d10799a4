"""Second-quantized fermionic operators and their Majorana expansion.

Ladder operators are rewritten with the Hermitian Majorana generators

    m_{2i} = a_i† + a_i,    m_{2i+1} = i (a_i† - a_i),

equivalently a_i = (m_{2i} + i m_{2i+1}) / 2 and
a_i† = (m_{2i} - i m_{2i+1}) / 2.  Monomials are normal-ordered to strictly
increasing Majorana indices using {m_i, m_j} = 2 δ_ij (each adjacent swap
flips the sign, equal adjacent indices cancel to the identity).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .pauli import COEFF_PRUNE_TOL, FormatError


@dataclass(frozen=True, slots=True)
class LadderOp:
    mode: int
    dagger: bool

    def __post_init__(self):
        if self.mode < 0:
            raise ValueError("negative mode index")


class FermionOperator:
    """A sum of ladder-operator monomials with complex coefficients.

    Hermiticity is not enforced per term; builders emit Hermitian sums and
    the qubit-side conversion asserts realness.
    """

    __slots__ = ("n_modes", "terms")

    def __init__(self, n_modes: int, terms=()):
        if n_modes < 1:
            raise ValueError("n_modes must be positive")
        self.n_modes = n_modes
        cleaned = []
        for coeff, ops in terms:
            ops = tuple(
                op if isinstance(op, LadderOp) else LadderOp(int(op[0]), bool(op[1]))
                for op in ops
            )
            for op in ops:
                if op.mode >= n_modes:
                    raise ValueError(f"mode {op.mode} out of range for n_modes={n_modes}")
            cleaned.append((complex(coeff), ops))
        self.terms = cleaned

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"FermionOperator(n_modes={self.n_modes}, terms={len(self.terms)})"

    # -- interchange file format ----------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "n_modes": self.n_modes,
            "terms": [
                {
                    "re": t[0].real,
                    "im": t[0].imag,
                    "ops": [[op.mode, int(op.dagger)] for op in t[1]],
                }
                for t in self.terms
            ],
        }

    def save(self, path, metadata: dict | None = None) -> None:
        obj = self.to_json_dict()
        if metadata:
            obj["metadata"] = metadata
        with open(path, "w") as fh:
            json.dump(obj, fh, indent=1)
            fh.write("\n")

    @classmethod
    def from_json_dict(cls, obj) -> "FermionOperator":
        try:
            n_modes = obj["n_modes"]
            if not isinstance(n_modes, int) or n_modes < 1:
                raise FormatError("n_modes must be a positive integer")
            terms = []
            for entry in obj["terms"]:
                re, im = entry["re"], entry["im"]
                if not all(
                    isinstance(v, (int, float)) and math.isfinite(v) for v in (re, im)
                ):
                    raise FormatError(f"non-finite coefficient in term {entry!r}")
                ops = []
                for op in entry["ops"]:
                    mode, dag = int(op[0]), int(op[1])
                    if not 0 <= mode < n_modes:
                        raise FormatError(f"mode index {mode} out of range (n_modes={n_modes})")
                    if dag not in (0, 1):
                        raise FormatError(f"dagger flag must be 0 or 1, got {dag!r}")
                    ops.append(LadderOp(mode, bool(dag)))
                terms.append((complex(re, im), ops))
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"malformed fermionic interchange file: {exc}") from exc
        return cls(n_modes, terms)

    @classmethod
    def load(cls, path) -> "FermionOperator":
        try:
            with open(path) as fh:
                obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON in {path}: {exc}") from exc
        return cls.from_json_dict(obj)


@dataclass(frozen=True, slots=True)
class MajoranaMonomial:
    """coefficient * m_{i1} m_{i2} ... with strictly increasing indices."""

    coefficient: complex
    indices: tuple[int, ...]


def normal_order_indices(indices: Sequence[int]):
    """Sort Majorana indices, tracking the swap sign and cancelling pairs.

    Returns (sign, ordered) where sign is +-1 and ordered is a strictly
    increasing tuple.
    """
    idx = list(indices)
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    out = []
    i = 0
    while i < len(idx):
        if i + 1 < len(idx) and idx[i] == idx[i + 1]:
            i += 2  # m^2 = identity
        else:
            out.append(idx[i])
            i += 1
    return sign, tuple(out)


def to_majorana(f: FermionOperator) -> list[MajoranaMonomial]:
    """Expand a FermionOperator into canonical Majorana monomials.

    Each ladder operator splits into two Majorana choices; products are
    expanded distributively, normal-ordered, and like monomials combined.
    The output is sorted by (length, indices) for determinism.
    """
    acc: dict[tuple[int, ...], complex] = {}
    for coeff, ops in f.terms:
        if not ops:
            acc[()] = acc.get((), 0.0) + coeff
            continue
        choices = []
        for op in ops:
            even = (2 * op.mode, 0.5)
            odd = (2 * op.mode + 1, -0.5j if op.dagger else 0.5j)
            choices.append((even, odd))
        for pick in product(*choices):
            factor = coeff
            for _, fac in pick:
                factor *= fac
            sign, ordered = normal_order_indices([idx for idx, _ in pick])
            acc[ordered] = acc.get(ordered, 0.0) + sign * factor
    monomials = [
        MajoranaMonomial(c, idx)
        for idx, c in acc.items()
        if abs(c) >= COEFF_PRUNE_TOL
    ]
    monomials.sort(key=lambda mono: (len(mono.indices), mono.indices))
    return monomials


def anticommutation_check(monomials) -> bool:
    """Self-test hook: the normal-ordering algebra satisfies {m_i, m_j} = 2 δ_ij.

    Exercises every index pair appearing in the given monomials (all pairs
    up to the max index when the list is small).
    """
    seen = set()
    for mono in monomials:
        seen.update(mono.indices)
    if not seen:
        return True
    indices = sorted(seen)
    for i in indices:
        sign_ii, rest = normal_order_indices([i, i])
        if sign_ii != 1 or rest != ():
            return False
        for j in indices:
            if i == j:
                continue
            sign_ij, ord_ij = normal_order_indices([i, j])
            sign_ji, ord_ji = normal_order_indices([j, i])
            if ord_ij != ord_ji or sign_ij != -sign_ji:
                return False
    return True
