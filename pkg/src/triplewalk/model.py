"""Triple-graph model: parameters, Hamiltonian assembly, site partition.

A triple graph is an N-site path (the main chain, hopping strength 1) with
an S-site path (the side chain, hopping strength J > 0) attached by a single
bond of strength J at main-chain site l. Sites are labeled 1..N along the
main chain and N+1..N+S along the side chain; all couplings enter the
Hamiltonian as negative hopping matrix elements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SpecError

__all__ = [
    "TripleGraphSpec",
    "Hamiltonian",
    "SitePartition",
    "validate_spec",
    "build_hamiltonian",
    "partition",
]


@dataclass(frozen=True)
class TripleGraphSpec:
    """Parameters of a triple graph.

    Attributes
    ----------
    main_len : int
        Number of main-chain sites N, at least 1.
    side_len : int
        Number of side-chain sites S, at least 0 (0 means a bare chain).
    attach : int
        Main-chain site l where the side chain attaches, 1 <= l <= N.
    coupling : float
        Side-chain hopping J in units of the main-chain hopping, J > 0.
    """

    main_len: int
    side_len: int
    attach: int
    coupling: float

    @property
    def dim(self) -> int:
        """Total number of sites N + S."""
        return self.main_len + self.side_len


@dataclass(frozen=True)
class Hamiltonian:
    """Dense real-symmetric Hamiltonian of a triple graph.

    The matrix is 0-indexed storage for the 1-indexed site labels: entry
    [a-1, b-1] is the matrix element between sites a and b. All entries are
    0, -1, or -J, the diagonal is zero, and the matrix is exactly symmetric.
    """

    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class SitePartition:
    """The four disjoint site groups induced by the attachment point.

    left is {1..l-1}, connection is {l}, right is {l+1..N}, side is
    {N+1..N+S}; their union is all sites. left is empty iff l = 1 and
    right is empty iff l = N.
    """

    left: tuple[int, ...]
    connection: tuple[int, ...]
    right: tuple[int, ...]
    side: tuple[int, ...]


def validate_spec(spec: TripleGraphSpec) -> TripleGraphSpec:
    """Check all parameter bounds, returning the spec unchanged if valid.

    Raises
    ------
    SpecError
        Naming the violated bound.
    """
    if not isinstance(spec.main_len, (int, np.integer)) or spec.main_len < 1:
        raise SpecError(f"main_len must be an integer >= 1, got {spec.main_len!r}")
    if not isinstance(spec.side_len, (int, np.integer)) or spec.side_len < 0:
        raise SpecError(f"side_len must be an integer >= 0, got {spec.side_len!r}")
    if not isinstance(spec.attach, (int, np.integer)) or not (
        1 <= spec.attach <= spec.main_len
    ):
        raise SpecError(
            f"attach site {spec.attach!r} out of range 1..{spec.main_len}"
        )
    j = spec.coupling
    if not isinstance(j, (int, float, np.floating, np.integer)) or isinstance(
        j, bool
    ):
        raise SpecError(f"coupling must be a positive real, got {j!r}")
    if not math.isfinite(float(j)) or float(j) <= 0.0:
        raise SpecError(f"coupling must be positive and finite, got {j!r}")
    return spec


def build_hamiltonian(spec: TripleGraphSpec) -> Hamiltonian:
    """Assemble the dense Hamiltonian of a validated triple graph.

    Bonds: -1 between main-chain neighbors (j, j+1) for 1 <= j < N, -J
    between side-chain neighbors (j, j+1) for N+1 <= j < N+S, and -J on the
    attachment bond (l, N+1) when S >= 1.
    """
    validate_spec(spec)
    n, s, l = spec.main_len, spec.side_len, spec.attach
    j = float(spec.coupling)
    h = np.zeros((n + s, n + s))
    for a in range(n - 1):
        h[a, a + 1] = h[a + 1, a] = -1.0
    for a in range(n, n + s - 1):
        h[a, a + 1] = h[a + 1, a] = -j
    if s >= 1:
        h[l - 1, n] = h[n, l - 1] = -j
    return Hamiltonian(matrix=h)


def partition(spec: TripleGraphSpec) -> SitePartition:
    """Split the site labels into left, connection, right, and side groups."""
    validate_spec(spec)
    n, s, l = spec.main_len, spec.side_len, spec.attach
    return SitePartition(
        left=tuple(range(1, l)),
        connection=(l,),
        right=tuple(range(l + 1, n + 1)),
        side=tuple(range(n + 1, n + s + 1)),
    )
