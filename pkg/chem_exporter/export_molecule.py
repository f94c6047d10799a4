#!/usr/bin/env python3
"""Export one- and two-electron integrals as a fermionic interchange file.

Drives an ab initio package (PySCF when importable) to run a closed-shell
RHF calculation for a named molecule or an .xyz file, then writes every
nonzero second-quantized coefficient in the JSON schema consumed by the
mapping pipeline:

    {"n_modes": 2*n_orbitals, "terms": [{"re", "im", "ops"}, ...]}

Term conventions (documented in the output's "comment" field):
  * spin orbitals are blocked: mode = p for spin-up, n_orbitals + p for
    spin-down, with spatial orbitals in SCF energy order.  This is the
    convention common across quantum-chemistry qubit-mapping toolchains.
  * one-body terms are h_pq a_p^+ a_q per spin; two-body terms are emitted
    in physicist notation, h_ijkl a_i^+ a_j^+ a_l a_k with
    h_ijkl = <ij|kl> / 2; the nuclear repulsion enters as the empty-ops term.

When PySCF is missing (e.g. offline environments) a built-in fallback
backend handles hydrogen-only molecules in the STO-3G and 6-31G bases with
analytic s-type Gaussian integrals; anything else needs PySCF.

Usage:
    python export_molecule.py export --molecule H2 --basis sto-3g --out h2.json
    python export_molecule.py export --molecule mol.xyz --basis 6-31g --out mol.json
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from math import erf, exp, pi, sqrt

import numpy as np

ANGSTROM_TO_BOHR = 1.8897259886

COEFF_THRESH = 1e-12

# Contracted s shells, (exponent, coefficient) pairs from the standard
# basis-set tabulations.
BUILTIN_BASES = {
    "sto-3g": {
        "H": [
            [(3.42525091, 0.15432897), (0.62391373, 0.53532814), (0.16885540, 0.44463454)],
        ],
    },
    "6-31g": {
        "H": [
            [(18.7311370, 0.03349460), (2.8253937, 0.23472695), (0.6401217, 0.81375733)],
            [(0.1612778, 1.0)],
        ],
    },
}

NAMED_GEOMETRIES = {
    "H2": [("H", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 0.735))],
    "LiH": [("Li", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 1.5949))],
    "H2O": [
        ("O", (0.0, 0.0, 0.1173)),
        ("H", (0.0, 0.7572, -0.4692)),
        ("H", (0.0, -0.7572, -0.4692)),
    ],
}

ELEMENT_CHARGES = {"H": 1, "He": 2, "Li": 3, "Be": 4, "B": 5, "C": 6, "N": 7, "O": 8, "F": 9}


class ExportError(RuntimeError):
    pass


@dataclass
class MoleculeSpec:
    geometry: list  # [(symbol, (x, y, z) in Angstrom), ...]
    basis: str
    charge: int = 0
    multiplicity: int = 1

    def __post_init__(self):
        if not self.geometry:
            raise ExportError("geometry is empty")
        self.basis = self.basis.lower()
        for symbol, _ in self.geometry:
            if symbol not in ELEMENT_CHARGES:
                raise ExportError(f"unsupported element {symbol!r}")

    def n_electrons(self) -> int:
        return sum(ELEMENT_CHARGES[s] for s, _ in self.geometry) - self.charge


@dataclass
class Integrals:
    h_mo: np.ndarray       # (n_orb, n_orb)
    eri_mo: np.ndarray     # (n_orb,)*4, chemist convention (pq|rs)
    e_nuc: float
    n_electrons: int
    scf_energy: float
    backend: str


# ----------------------------------------------------------------------
# built-in backend: analytic integrals over contracted s-type Gaussians
# ----------------------------------------------------------------------


def _boys0(t: float) -> float:
    if t < 1e-12:
        return 1.0 - t / 3.0
    return 0.5 * sqrt(pi / t) * erf(sqrt(t))


@dataclass
class _SShell:
    center: np.ndarray
    prims: list = field(default_factory=list)  # [(alpha, normalized coeff)]


def _builtin_shells(spec: MoleculeSpec):
    basis = BUILTIN_BASES.get(spec.basis)
    if basis is None:
        raise ExportError(
            f"basis {spec.basis!r} not in the built-in backend (install pyscf)"
        )
    shells = []
    charges = []
    for symbol, xyz in spec.geometry:
        if symbol not in basis:
            raise ExportError(
                f"element {symbol} needs pyscf; the built-in backend covers {sorted(basis)}"
            )
        center = np.asarray(xyz, float) * ANGSTROM_TO_BOHR
        charges.append((center, float(ELEMENT_CHARGES[symbol])))
        for shell in basis[symbol]:
            prims = [(a, d * (2.0 * a / pi) ** 0.75) for a, d in shell]
            shells.append(_SShell(center, prims))
    return shells, charges


def _s_overlap(A, B):
    out = 0.0
    ab2 = float(np.dot(A.center - B.center, A.center - B.center))
    for a, da in A.prims:
        for b, db in B.prims:
            p = a + b
            out += da * db * (pi / p) ** 1.5 * exp(-a * b / p * ab2)
    return out


def _s_kinetic(A, B):
    out = 0.0
    ab2 = float(np.dot(A.center - B.center, A.center - B.center))
    for a, da in A.prims:
        for b, db in B.prims:
            p = a + b
            mu = a * b / p
            out += da * db * mu * (3.0 - 2.0 * mu * ab2) * (pi / p) ** 1.5 * exp(-mu * ab2)
    return out


def _s_nuclear(A, B, charges):
    out = 0.0
    ab2 = float(np.dot(A.center - B.center, A.center - B.center))
    for a, da in A.prims:
        for b, db in B.prims:
            p = a + b
            P = (a * A.center + b * B.center) / p
            pre = da * db * 2.0 * pi / p * exp(-a * b / p * ab2)
            for C, Z in charges:
                out -= pre * Z * _boys0(p * float(np.dot(P - C, P - C)))
    return out


def _s_eri(A, B, C, D):
    out = 0.0
    ab2 = float(np.dot(A.center - B.center, A.center - B.center))
    cd2 = float(np.dot(C.center - D.center, C.center - D.center))
    for a, da in A.prims:
        for b, db in B.prims:
            p = a + b
            P = (a * A.center + b * B.center) / p
            eab = exp(-a * b / p * ab2)
            for c, dc in C.prims:
                for d, dd in D.prims:
                    q = c + d
                    Q = (c * C.center + d * D.center) / q
                    ecd = exp(-c * d / q * cd2)
                    t = p * q / (p + q) * float(np.dot(P - Q, P - Q))
                    out += (
                        da * db * dc * dd
                        * 2.0 * pi**2.5 / (p * q * sqrt(p + q))
                        * eab * ecd * _boys0(t)
                    )
    return out


def _nuclear_repulsion(charges) -> float:
    out = 0.0
    for i in range(len(charges)):
        for j in range(i + 1, len(charges)):
            (ci, zi), (cj, zj) = charges[i], charges[j]
            out += zi * zj / float(np.linalg.norm(ci - cj))
    return out


def _integrals_builtin(spec: MoleculeSpec, max_iter=200, tol=1e-12) -> Integrals:
    if spec.multiplicity != 1 or spec.n_electrons() % 2:
        raise ExportError("the built-in backend is closed-shell RHF only")
    shells, charges = _builtin_shells(spec)
    n = len(shells)
    S = np.array([[_s_overlap(a, b) for b in shells] for a in shells])
    T = np.array([[_s_kinetic(a, b) for b in shells] for a in shells])
    V = np.array([[_s_nuclear(a, b, charges) for b in shells] for a in shells])
    eri = np.zeros((n, n, n, n))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    eri[i, j, k, l] = _s_eri(shells[i], shells[j], shells[k], shells[l])
    hcore = T + V
    evals, evecs = np.linalg.eigh(S)
    s_inv_half = evecs @ np.diag(evals**-0.5) @ evecs.T
    n_occ = spec.n_electrons() // 2
    dens = np.zeros((n, n))
    e_old = None
    for _ in range(max_iter):
        J = np.einsum("pqrs,rs->pq", eri, dens)
        K = np.einsum("prqs,rs->pq", eri, dens)
        F = hcore + J - 0.5 * K
        eps, Cp = np.linalg.eigh(s_inv_half @ F @ s_inv_half)
        C = s_inv_half @ Cp
        dens = 2.0 * C[:, :n_occ] @ C[:, :n_occ].T
        e_elec = 0.5 * float(np.sum(dens * (hcore + F)))
        if e_old is not None and abs(e_elec - e_old) < tol:
            break
        e_old = e_elec
    else:
        raise ExportError("SCF did not converge")
    e_nuc = _nuclear_repulsion(charges)
    h_mo = C.T @ hcore @ C
    eri_mo = np.einsum("pi,qj,rk,sl,pqrs->ijkl", C, C, C, C, eri, optimize=True)
    return Integrals(h_mo, eri_mo, e_nuc, spec.n_electrons(), e_elec + e_nuc, "builtin")


# ----------------------------------------------------------------------
# pyscf backend
# ----------------------------------------------------------------------


def _integrals_pyscf(spec: MoleculeSpec) -> Integrals:
    from pyscf import ao2mo, gto, scf

    atom = "; ".join(f"{s} {x} {y} {z}" for s, (x, y, z) in spec.geometry)
    mol = gto.M(
        atom=atom,
        basis=spec.basis,
        charge=spec.charge,
        spin=spec.multiplicity - 1,
        unit="Angstrom",
        verbose=0,
    )
    mf = scf.RHF(mol)
    e_scf = mf.kernel()
    if not mf.converged:
        raise ExportError("pyscf SCF did not converge")
    C = mf.mo_coeff
    h_mo = C.T @ mf.get_hcore() @ C
    eri_mo = ao2mo.restore(1, ao2mo.kernel(mol, C), C.shape[1])
    return Integrals(h_mo, np.asarray(eri_mo), mol.energy_nuc(), mol.nelectron, float(e_scf), "pyscf")


def compute_integrals(spec: MoleculeSpec, backend: str = "auto") -> Integrals:
    if backend not in ("auto", "pyscf", "builtin"):
        raise ExportError(f"unknown backend {backend!r}")
    if backend in ("auto", "pyscf"):
        try:
            import pyscf  # noqa: F401

            return _integrals_pyscf(spec)
        except ImportError:
            if backend == "pyscf":
                raise ExportError("pyscf is not installed")
    return _integrals_builtin(spec)


# ----------------------------------------------------------------------
# second-quantized term emission (blocked spin orbitals)
# ----------------------------------------------------------------------


def interchange_terms(ints: Integrals) -> dict:
    n_orb = ints.h_mo.shape[0]
    n_modes = 2 * n_orb

    def mode(p, s):
        return p + s * n_orb

    terms = []
    if abs(ints.e_nuc) > COEFF_THRESH:
        terms.append({"re": float(ints.e_nuc), "im": 0.0, "ops": []})
    for p in range(n_orb):
        for q in range(n_orb):
            hpq = float(ints.h_mo[p, q])
            if abs(hpq) <= COEFF_THRESH:
                continue
            for s in (0, 1):
                terms.append(
                    {"re": hpq, "im": 0.0, "ops": [[mode(p, s), 1], [mode(q, s), 0]]}
                )
    for p in range(n_orb):
        for q in range(n_orb):
            for r in range(n_orb):
                for s_ in range(n_orb):
                    # h_ijkl = <ij|kl>/2 = (ik|jl)/2 with i=p, j=q, k=r, l=s_
                    val = 0.5 * float(ints.eri_mo[p, r, q, s_])
                    if abs(val) <= COEFF_THRESH:
                        continue
                    for si in (0, 1):
                        for sj in (0, 1):
                            terms.append(
                                {
                                    "re": val,
                                    "im": 0.0,
                                    "ops": [
                                        [mode(p, si), 1],
                                        [mode(q, sj), 1],
                                        [mode(s_, sj), 0],
                                        [mode(r, si), 0],
                                    ],
                                }
                            )
    return {"n_modes": n_modes, "terms": terms}


def export_molecule(spec: MoleculeSpec, out_path: str, backend: str = "auto") -> Integrals:
    ints = compute_integrals(spec, backend)
    obj = interchange_terms(ints)
    obj["comment"] = (
        f"backend={ints.backend}; basis={spec.basis}; "
        f"geometry={spec.geometry!r} (Angstrom); charge={spec.charge}; "
        f"multiplicity={spec.multiplicity}; E_SCF={ints.scf_energy:.10f} Ha; "
        "spin orbitals blocked (mode = p for up, n_orb + p for down); "
        "two-body terms in physicist notation h_ijkl a_i^ a_j^ a_l a_k with "
        "h_ijkl = <ij|kl>/2; empty-ops term is the nuclear repulsion"
    )
    with open(out_path, "w") as fh:
        json.dump(obj, fh, indent=1)
        fh.write("\n")
    return ints


# ----------------------------------------------------------------------
# FCI reference (dense Fock-space diagonalization in the N-electron sector)
# ----------------------------------------------------------------------


def _ladder_dense(n_modes: int, mode: int) -> np.ndarray:
    z = np.array([[1, 0], [0, -1]], float)
    low = np.array([[0, 1], [0, 0]], float)
    eye = np.eye(2)
    out = np.array([[1.0]])
    for m in range(n_modes):
        out = np.kron(out, low if m == mode else (z if m < mode else eye))
    return out


def fci_ground_energy(ints: Integrals) -> float:
    """Lowest eigenvalue in the N-electron sector, nuclear repulsion included.

    Built directly from the integral tensors with dense ladder matrices;
    independent of the interchange file and of the mapping pipeline.
    """
    n_orb = ints.h_mo.shape[0]
    n_modes = 2 * n_orb
    if n_modes > 12:
        raise ExportError("dense FCI reference is limited to 12 spin orbitals")

    def mode(p, s):
        return p + s * n_orb

    dim = 2**n_modes
    lower = [_ladder_dense(n_modes, m) for m in range(n_modes)]
    raise_ = [m.T for m in lower]
    ham = np.zeros((dim, dim))
    for p in range(n_orb):
        for q in range(n_orb):
            hpq = float(ints.h_mo[p, q])
            if abs(hpq) <= COEFF_THRESH:
                continue
            for s in (0, 1):
                ham += hpq * (raise_[mode(p, s)] @ lower[mode(q, s)])
    for p in range(n_orb):
        for q in range(n_orb):
            for r in range(n_orb):
                for s_ in range(n_orb):
                    val = 0.5 * float(ints.eri_mo[p, r, q, s_])
                    if abs(val) <= COEFF_THRESH:
                        continue
                    for si in (0, 1):
                        for sj in (0, 1):
                            ham += val * (
                                raise_[mode(p, si)]
                                @ raise_[mode(q, sj)]
                                @ lower[mode(s_, sj)]
                                @ lower[mode(r, si)]
                            )
    occupations = np.array([bin(b).count("1") for b in range(dim)])
    # qubit 0 is the most significant factor in the kron chain
    sector = np.flatnonzero(occupations == ints.n_electrons)
    block = ham[np.ix_(sector, sector)]
    return float(np.linalg.eigvalsh(block).min() + ints.e_nuc)


# ----------------------------------------------------------------------
# CLI
# ----------------------------------------------------------------------


def parse_xyz(path: str):
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    try:
        count = int(lines[0])
        rows = lines[2 : 2 + count] if len(lines) >= 2 + count else lines[1:]
        geometry = []
        for row in rows:
            sym, x, y, z = row.split()[:4]
            geometry.append((sym, (float(x), float(y), float(z))))
    except (ValueError, IndexError) as exc:
        raise ExportError(f"cannot parse xyz file {path}: {exc}") from exc
    return geometry


def resolve_geometry(name_or_path: str):
    if name_or_path in NAMED_GEOMETRIES:
        return NAMED_GEOMETRIES[name_or_path]
    return parse_xyz(name_or_path)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="export_molecule", description=__doc__.splitlines()[0]
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("export", help="run SCF and write the interchange JSON")
    p.add_argument("--molecule", required=True, help="named molecule or .xyz file")
    p.add_argument("--basis", required=True, help="basis set name, e.g. sto-3g")
    p.add_argument("--charge", type=int, default=0)
    p.add_argument("--multiplicity", type=int, default=1)
    p.add_argument("--backend", choices=("auto", "pyscf", "builtin"), default="auto")
    p.add_argument("--fci", action="store_true", help="also print the FCI reference energy")
    p.add_argument("--out", required=True)
    args = parser.parse_args(argv)

    try:
        spec = MoleculeSpec(
            resolve_geometry(args.molecule), args.basis, args.charge, args.multiplicity
        )
        ints = export_molecule(spec, args.out, args.backend)
    except (ExportError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(
        f"wrote {args.out}: {2 * ints.h_mo.shape[0]} modes, backend={ints.backend}, "
        f"E_SCF={ints.scf_energy:.8f} Ha"
    )
    if args.fci:
        print(f"E_FCI={fci_ground_energy(ints):.8f} Ha")
    return 0


if __name__ == "__main__":
    sys.exit(main())
