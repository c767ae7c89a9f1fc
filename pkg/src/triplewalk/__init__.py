"""Continuous-time quantum walks on a chain with an attached side chain.

The package builds tight-binding Hamiltonians for a main chain of N sites
with an S-site side chain joined at site l through hopping J, diagonalizes
them with a self-contained Jacobi routine, evolves initial site states, and
classifies when the side chain blocks transmission past the attachment point.
Spectral tools cover lattice Green functions, the level equation whose roots
are the exact eigenvalues, the strong-coupling level layout, and perturbative
estimates of the slow transfer through near-degenerate level pairs.
"""

from .dynamics import (
    ProbabilityTrace,
    SwitchingVerdict,
    detect_switching,
    propagate_trace,
    side_chain_leakage_max,
    switching_verdict,
)
from .errors import (
    BracketFailureWarning,
    ConvergenceError,
    DegeneratePartitionError,
    SpecError,
    ZOnSpectrumError,
)
from .linalg import (
    SpectralDecomposition,
    WalkState,
    basis_state,
    evolve,
    matexp_oracle,
    resolvent_element,
    symmetric_eig,
)
from .model import (
    Hamiltonian,
    SitePartition,
    TripleGraphSpec,
    build_hamiltonian,
    partition,
    validate_spec,
)
from .spectral import (
    ChainSpectrum,
    LevelClassification,
    RootSet,
    chain_levels,
    classify_levels,
    delta_shift,
    find_roots,
    g0_diag,
    g0_element,
    lambda_s,
    level_equation,
    perturbative_amplitude,
    remaining_levels,
    shifted_levels_large_j,
    side_chain_g_diag,
    side_leak_residue,
)
from .sweep import (
    SweepGrid,
    SweepRecord,
    classify_parity_effect,
    gcd_predicate,
    run_sweep,
    switching_law,
)

__version__ = "0.1.0"

__all__ = [
    "BracketFailureWarning",
    "ChainSpectrum",
    "ConvergenceError",
    "DegeneratePartitionError",
    "Hamiltonian",
    "LevelClassification",
    "ProbabilityTrace",
    "RootSet",
    "SitePartition",
    "SpecError",
    "SpectralDecomposition",
    "SweepGrid",
    "SweepRecord",
    "SwitchingVerdict",
    "TripleGraphSpec",
    "WalkState",
    "ZOnSpectrumError",
    "basis_state",
    "build_hamiltonian",
    "chain_levels",
    "classify_levels",
    "classify_parity_effect",
    "delta_shift",
    "detect_switching",
    "evolve",
    "find_roots",
    "g0_diag",
    "g0_element",
    "gcd_predicate",
    "lambda_s",
    "level_equation",
    "matexp_oracle",
    "partition",
    "perturbative_amplitude",
    "propagate_trace",
    "remaining_levels",
    "resolvent_element",
    "run_sweep",
    "shifted_levels_large_j",
    "side_chain_g_diag",
    "side_chain_leakage_max",
    "side_leak_residue",
    "switching_law",
    "switching_verdict",
    "symmetric_eig",
    "validate_spec",
    "__version__",
]
