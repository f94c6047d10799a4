"""rsdmap: Pauli-weight reduction for fermion-to-qubit mappings.

Builds fermionic Hamiltonians, maps them to qubit Pauli-string form
(Jordan-Wigner, Bravyi-Kitaev, balanced ternary tree) and greedily reduces
the (weighted) Pauli weight by randomized subsystem descent: sample a few
qubits, exhaustively search short Clifford sequences there, accept only
strict improvements.
"""

from .clifford import CliffordGate, GateSequence, conjugate_hamiltonian, conjugate_pauli
from .fermion import (
    FermionOperator,
    LadderOp,
    MajoranaMonomial,
    anticommutation_check,
    normal_order_indices,
    to_majorana,
)
from .mappers import (
    MAPPERS,
    MappingTable,
    apply_mapping,
    bravyi_kitaev,
    jordan_wigner,
    map_fermion_operator,
    ternary_tree,
)
from .models import (
    LatticeSpec,
    build_chain_hopping,
    build_grid_hopping,
    build_hubbard,
    h2_fixture_path,
    load_fermion_file,
)
from .optimize import (
    RSDConfig,
    RSDResult,
    SamplerKind,
    TrajectoryRecord,
    hamming_probabilities,
    percentage_reduction,
    rsd_optimize,
    sample_indices,
)
from .pauli import (
    FormatError,
    NumericIntegrityError,
    PauliString,
    PhasedPauli,
    QubitHamiltonian,
    hamming_profile,
    pauli_product,
    total_pauli_weight,
    weight,
    weighted_pauli_weight,
)
from .solver import SolverConfig, SubsystemView, apply_to_global, dfs_search, restrict

__version__ = "0.1.0"
