"""Fermion-to-qubit mappings: Jordan-Wigner, Bravyi-Kitaev, ternary tree.

A mapping assigns each of the 2n Majorana generators a Pauli word on n
qubits such that all images mutually anticommute, square to +identity and
are independent over GF(2).  Applying a mapping turns a Majorana expansion
into a real-coefficient QubitHamiltonian.
"""

from __future__ import annotations

from dataclasses import dataclass

from .pauli import (
    IMAG_TOL,
    NumericIntegrityError,
    PauliString,
    PhasedPauli,
    QubitHamiltonian,
    pauli_product,
)


@dataclass(frozen=True)
class MappingTable:
    """Images of m_0 .. m_{2n-1} on n qubits (entry k is the image of m_k)."""

    n_modes: int
    images: tuple[PhasedPauli, ...]

    def __post_init__(self):
        if len(self.images) != 2 * self.n_modes:
            raise ValueError("a mapping needs exactly 2 * n_modes images")

    def validate(self) -> None:
        """Raise unless the images form a valid Majorana representation."""
        imgs = self.images
        for k, img in enumerate(imgs):
            if img.pauli.n_qubits != self.n_modes:
                raise ValueError(f"image {k} acts on the wrong qubit count")
            if img.phase_power % 2 != 0:
                raise ValueError(f"image {k} does not square to +identity")
            if img.pauli.x == 0 and img.pauli.z == 0:
                raise ValueError(f"image {k} is the identity")
        for a in range(len(imgs)):
            for b in range(a + 1, len(imgs)):
                if imgs[a].pauli.commutes_with(imgs[b].pauli):
                    raise ValueError(f"images {a} and {b} fail to anticommute")
        n = self.n_modes
        vectors = [img.pauli.x | (img.pauli.z << n) for img in imgs]
        if _gf2_rank(vectors) != 2 * n:
            raise ValueError("images are linearly dependent over GF(2)")


def _gf2_rank(vectors) -> int:
    pivots: dict[int, int] = {}
    rank = 0
    for v in vectors:
        while v:
            lead = v.bit_length() - 1
            if lead in pivots:
                v ^= pivots[lead]
            else:
                pivots[lead] = v
                rank += 1
                break
    return rank


def jordan_wigner(n_modes: int) -> MappingTable:
    """m_{2i} -> Z_0..Z_{i-1} X_i,  m_{2i+1} -> Z_0..Z_{i-1} Y_i."""
    if n_modes < 1:
        raise ValueError("n_modes must be positive")
    images = []
    for i in range(n_modes):
        zmask = (1 << i) - 1
        xbit = 1 << i
        images.append(PhasedPauli(PauliString(n_modes, xbit, zmask), 0))
        images.append(PhasedPauli(PauliString(n_modes, xbit, zmask | xbit), 0))
    return MappingTable(n_modes, tuple(images))


def _fenwick_structure(n: int):
    """Balanced Fenwick tree over n nodes: (parent, children) per node.

    Built by the standard recursive bisection with node n-1 as root, which
    also handles mode counts that are not powers of two.
    """
    parent = [-1] * n
    children: list[list[int]] = [[] for _ in range(n)]

    def build(left, right, par):
        if left >= right:
            return
        pivot = (left + right) >> 1
        parent[pivot] = par
        children[par].append(pivot)
        build(left, pivot, pivot)
        build(pivot + 1, right, par)

    build(0, n - 1, n - 1)
    return parent, children


def bravyi_kitaev(n_modes: int) -> MappingTable:
    """Fenwick-tree construction.

    For mode j with ancestor set U(j), child set F(j) and remainder set
    C(j) (children of ancestors with index below j):

        m_{2j}   -> X_j . X_{U(j)} . Z_{C(j) + F(j)}
        m_{2j+1} -> Y_j . X_{U(j)} . Z_{C(j)}
    """
    if n_modes < 1:
        raise ValueError("n_modes must be positive")
    parent, children = _fenwick_structure(n_modes)
    images = []
    for j in range(n_modes):
        update = []
        p = parent[j]
        while p != -1:
            update.append(p)
            p = parent[p]
        remainder = [c for a in update for c in children[a] if c < j]
        parity = remainder + children[j]

        xmask = 1 << j
        for q in update:
            xmask |= 1 << q
        z_even = 0
        for q in parity:
            z_even |= 1 << q
        z_odd = 1 << j
        for q in remainder:
            z_odd |= 1 << q
        images.append(PhasedPauli(PauliString(n_modes, xmask, z_even), 0))
        images.append(PhasedPauli(PauliString(n_modes, xmask, z_odd), 0))
    return MappingTable(n_modes, tuple(images))


def ternary_tree(n_modes: int) -> MappingTable:
    """Balanced ternary tree over n qubits in breadth-first order.

    Node q's children are 3q+1, 3q+2, 3q+3 with edges labelled X, Y, Z.
    Missing-child slots give 2n+1 root-to-leaf Pauli words that pairwise
    anticommute; the slot of maximal breadth-first index (the all-Z-most
    path) is dropped and the rest are assigned to m_0 .. m_{2n-1} in slot
    order.
    """
    n = n_modes
    if n < 1:
        raise ValueError("n_modes must be positive")
    # prefix words for the path from the root down to each node (exclusive)
    px = [0] * n
    pz = [0] * n
    for q in range(n):
        for branch in range(3):
            child = 3 * q + 1 + branch
            if child < n:
                x, z = px[q], pz[q]
                if branch == 0:
                    x |= 1 << q
                elif branch == 1:
                    x |= 1 << q
                    z |= 1 << q
                else:
                    z |= 1 << q
                px[child] = x
                pz[child] = z
    images = []
    for slot in range(n, 3 * n):  # slot 3n (all-Z-most) is dropped
        q, branch = divmod(slot - 1, 3)
        x, z = px[q], pz[q]
        if branch == 0:
            x |= 1 << q
        elif branch == 1:
            x |= 1 << q
            z |= 1 << q
        else:
            z |= 1 << q
        images.append(PhasedPauli(PauliString(n, x, z), 0))
    return MappingTable(n, tuple(images))


MAPPERS = {"jw": jordan_wigner, "bk": bravyi_kitaev, "ternary": ternary_tree}


def apply_mapping(table: MappingTable, monomials) -> QubitHamiltonian:
    """Map Majorana monomials to a real QubitHamiltonian.

    Each monomial becomes the phased product of its Majorana images times
    its coefficient; like Pauli words are combined.  Raises
    NumericIntegrityError if any combined coefficient keeps an imaginary
    part above tolerance (non-Hermitian input or a mapper bug).
    """
    n = table.n_modes
    identity = PauliString.identity(n)
    acc: dict[PauliString, complex] = {}
    for mono in monomials:
        word = identity
        phase = 0
        for idx in mono.indices:
            if not 0 <= idx < 2 * n:
                raise ValueError(f"Majorana index {idx} out of range for {n} modes")
            img = table.images[idx]
            prod = pauli_product(word, img.pauli)
            word = prod.pauli
            phase = (phase + prod.phase_power + img.phase_power) % 4
        coeff = mono.coefficient * (1j ** phase)
        acc[word] = acc.get(word, 0.0) + coeff
    worst = max((abs(c.imag) for c in acc.values()), default=0.0)
    if worst > IMAG_TOL:
        raise NumericIntegrityError(
            f"imaginary residue {worst:.3e} exceeds {IMAG_TOL:.0e}; "
            "input operator is not Hermitian under this mapping"
        )
    return QubitHamiltonian(n, {p: c.real for p, c in acc.items()})


def map_fermion_operator(table_or_name, fermion_op) -> QubitHamiltonian:
    """Convenience wrapper: expand to Majorana form and apply a mapping."""
    from .fermion import to_majorana

    if isinstance(table_or_name, str):
        table = MAPPERS[table_or_name](fermion_op.n_modes)
    else:
        table = table_or_name
    if table.n_modes != fermion_op.n_modes:
        raise ValueError("mapping table and operator disagree on mode count")
    return apply_mapping(table, to_majorana(fermion_op))
