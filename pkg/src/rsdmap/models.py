"""Benchmark fermionic Hamiltonians and interchange-file ingestion.

Builders cover the 1D range-r hopping chain (all-to-all as the r = N-1
special case), the 2D nearest-neighbor hopping grid and the 2D Hubbard
model.  Grids are row-major; Hubbard modes interleave spin as
mode = 2*site + sigma.  Boundaries default to open; the periodic variant
adds one wrap edge per site per positive axis direction (so a 2x2 torus
carries doubled edges).
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .fermion import FermionOperator

BOUNDARIES = ("open", "periodic")


def h2_fixture_path():
    """Bundled H2/STO-3G interchange file (regenerable with chem_exporter)."""
    return resources.files("rsdmap").joinpath("data/h2_sto3g.json")


@dataclass(frozen=True)
class LatticeSpec:
    """CLI-facing description of a benchmark model."""

    kind: str  # chain_hopping | all_to_all | grid_hopping | hubbard
    sites: int
    range_: int = 1
    t_hop: float = 1.0
    u_int: float = 4.0
    boundary: str = "open"

    def build(self) -> FermionOperator:
        if self.boundary not in BOUNDARIES:
            raise ValueError(f"boundary must be one of {BOUNDARIES}")
        if self.kind == "chain_hopping":
            return build_chain_hopping(self.sites, self.range_, self.boundary)
        if self.kind == "all_to_all":
            return build_chain_hopping(self.sites, self.sites - 1, self.boundary)
        if self.kind == "grid_hopping":
            return build_grid_hopping(self.sites, self.boundary)
        if self.kind == "hubbard":
            return build_hubbard(self.sites, self.t_hop, self.u_int, self.boundary)
        raise ValueError(f"unknown model kind {self.kind!r}")

    def metadata(self) -> dict:
        meta = {"kind": self.kind, "sites": self.sites, "boundary": self.boundary}
        if self.kind == "chain_hopping":
            meta["range"] = self.range_
        if self.kind == "hubbard":
            meta.update(t_hop=self.t_hop, u_int=self.u_int, spin_order="mode = 2*site + sigma")
        if self.kind in ("grid_hopping", "hubbard"):
            meta["site_order"] = "row-major"
        return meta


def build_chain_hopping(n_sites: int, hop_range: int, boundary: str = "open") -> FermionOperator:
    """sum over 0 < |i-j| <= r of a_i† a_j, one unit-coefficient term per ordered pair."""
    if n_sites < 2:
        raise ValueError("chain needs at least 2 sites")
    if not 1 <= hop_range <= n_sites - 1:
        raise ValueError(f"hopping range must be in 1..{n_sites - 1}, got {hop_range}")
    terms = []
    for i in range(n_sites):
        for j in range(n_sites):
            dist = abs(i - j)
            if boundary == "periodic":
                dist = min(dist, n_sites - dist)
            if 0 < dist <= hop_range:
                terms.append((1.0, [(i, 1), (j, 0)]))
    return FermionOperator(n_sites, terms)


def _grid_edges(n_side: int, boundary: str):
    """One edge per site per positive axis direction (wrap when periodic)."""
    edges = []
    for row in range(n_side):
        for col in range(n_side):
            site = row * n_side + col
            if col + 1 < n_side:
                edges.append((site, site + 1))
            elif boundary == "periodic":
                edges.append((site, row * n_side))
            if row + 1 < n_side:
                edges.append((site, site + n_side))
            elif boundary == "periodic":
                edges.append((site, col))
    return edges


def build_grid_hopping(n_side: int, boundary: str = "open") -> FermionOperator:
    """Nearest-neighbor hopping on an N x N grid, row-major site order."""
    if n_side < 2:
        raise ValueError("grid needs side length >= 2")
    terms = []
    for u, v in _grid_edges(n_side, boundary):
        terms.append((1.0, [(u, 1), (v, 0)]))
        terms.append((1.0, [(v, 1), (u, 0)]))
    return FermionOperator(n_side * n_side, terms)


def build_hubbard(
    n_side: int, t_hop: float = 1.0, u_int: float = 4.0, boundary: str = "open"
) -> FermionOperator:
    """2D Hubbard model: -t sum over edges and spins of hops + U sum of n_up n_down."""
    if n_side < 2:
        raise ValueError("grid needs side length >= 2")
    terms = []
    if t_hop != 0.0:
        for u, v in _grid_edges(n_side, boundary):
            for spin in (0, 1):
                mu, mv = 2 * u + spin, 2 * v + spin
                terms.append((-t_hop, [(mu, 1), (mv, 0)]))
                terms.append((-t_hop, [(mv, 1), (mu, 0)]))
    if u_int != 0.0:
        for site in range(n_side * n_side):
            up, down = 2 * site, 2 * site + 1
            terms.append((u_int, [(up, 1), (up, 0), (down, 1), (down, 0)]))
    return FermionOperator(2 * n_side * n_side, terms)


def load_fermion_file(path) -> FermionOperator:
    """Parse the fermionic interchange JSON (schema owned by fermion.py)."""
    return FermionOperator.load(path)
