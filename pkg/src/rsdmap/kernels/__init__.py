"""Numeric kernels with two interchangeable backends.

The default backend JIT-compiles the hot loops with numba.  Set
RSDMAP_BACKEND=numpy to force the pure-numpy fallback (reference
implementation, also the baseline in benchmarks/bench_kernels.py).
Both backends traverse the subsystem search tree identically, so gate
sequences and integer costs agree exactly.
"""

import os
import warnings

from .tables import (  # noqa: F401
    GATE_CNOT,
    GATE_H,
    GATE_NAMES,
    GATE_S,
    MAX_SOLVER_WIDTH,
    conjugation_tables,
    gate_list,
)

BACKEND = os.environ.get("RSDMAP_BACKEND", "numba").strip().lower()
if BACKEND not in ("numba", "numpy"):
    raise ValueError(f"RSDMAP_BACKEND must be 'numba' or 'numpy', got {BACKEND!r}")

if BACKEND == "numba":
    try:
        from . import _numba as _impl
    except ImportError:  # pragma: no cover - depends on environment
        warnings.warn("numba unavailable, falling back to the numpy backend")
        BACKEND = "numpy"
        from . import _numpy as _impl
else:
    from . import _numpy as _impl

term_weights = _impl.term_weights
column_counts = _impl.column_counts
apply_gates = _impl.apply_gates
restrict_words = _impl.restrict_words
dfs_minimize = _impl.dfs_minimize
