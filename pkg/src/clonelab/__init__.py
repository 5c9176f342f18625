"""Optimal universal asymmetric 1->2 and 1->3 quantum cloners in dimension d."""
from .duplicator import (
    DuplicatorSolution,
    DuplicatorWeights,
    duplicator_choi,
    duplicator_fidelities,
    duplicator_isometry,
    solve_duplicator,
)
from .eigen import EigenSystem, degenerate_groups, hermitian_eigensystem
from .errors import CloneLabError
from .tensor import (
    Isometry,
    Ket,
    Operator,
    haar_state,
    max_entangled,
    partial_trace,
    pure_fidelity,
    sym_basis_state,
    tensor,
)
from .triplicator import (
    AmplitudeTriple,
    TriplicatorSolution,
    TriplicatorWeights,
    amplitudes_for_root,
    cubic_roots,
    solve_triplicator,
    triplicator_choi,
    triplicator_fidelities,
    triplicator_isometry,
)

__version__ = "0.1.0"
