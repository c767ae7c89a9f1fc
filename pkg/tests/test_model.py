"""Tests for graph parameters, Hamiltonian assembly, and site partitions."""

import numpy as np
import pytest

from triplewalk.errors import SpecError
from triplewalk.model import (
    TripleGraphSpec,
    build_hamiltonian,
    partition,
    validate_spec,
)

SEED = 9001


def random_specs(rng, count, n_max=20, s_max=5):
    for _ in range(count):
        n = int(rng.integers(1, n_max + 1))
        yield TripleGraphSpec(
            main_len=n,
            side_len=int(rng.integers(0, s_max + 1)),
            attach=int(rng.integers(1, n + 1)),
            coupling=float(rng.uniform(0.1, 30.0)),
        )


def test_reference_hamiltonian_bonds():
    spec = TripleGraphSpec(main_len=11, side_len=1, attach=5, coupling=10.0)
    h = build_hamiltonian(spec).matrix
    assert h.shape == (12, 12)
    for a in range(10):
        assert h[a, a + 1] == -1.0
    # attachment bond between site 5 and the single side site 12
    assert h[4, 11] == -10.0
    assert h[11, 4] == -10.0
    assert np.count_nonzero(h) == 2 * 11  # 11 undirected bonds on 12 sites


def test_two_site_side_chain_internal_bond():
    spec = TripleGraphSpec(main_len=4, side_len=2, attach=2, coupling=3.0)
    h = build_hamiltonian(spec).matrix
    assert h[1, 4] == -3.0  # attachment bond
    assert h[4, 5] == -3.0  # side-chain internal bond
    assert h[3, 4] == 0.0  # side chain hangs off site 2, not site 4


def test_bare_chain_has_no_side_bonds():
    spec = TripleGraphSpec(main_len=6, side_len=0, attach=3, coupling=10.0)
    h = build_hamiltonian(spec).matrix
    assert h.shape == (6, 6)
    assert np.count_nonzero(h) == 2 * 5


def test_random_hamiltonians_are_symmetric_trees():
    rng = np.random.default_rng(SEED)
    for spec in random_specs(rng, 50):
        h = build_hamiltonian(spec).matrix
        assert np.array_equal(h, h.T)
        assert np.all(np.diag(h) == 0.0)
        values = set(np.round(np.unique(h), 12))
        assert values <= {0.0, -1.0, round(-spec.coupling, 12)}
        # a connected tree on dim sites has exactly dim - 1 bonds
        assert np.count_nonzero(h) == 2 * (spec.dim - 1)


def test_dim_property():
    spec = TripleGraphSpec(main_len=7, side_len=3, attach=2, coupling=1.0)
    assert spec.dim == 10
    assert build_hamiltonian(spec).dim == 10


def test_validate_returns_the_spec():
    spec = TripleGraphSpec(main_len=5, side_len=0, attach=5, coupling=0.5)
    assert validate_spec(spec) is spec


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(main_len=0, side_len=1, attach=1, coupling=1.0),
        dict(main_len=-3, side_len=1, attach=1, coupling=1.0),
        dict(main_len=5, side_len=-1, attach=1, coupling=1.0),
        dict(main_len=5, side_len=1, attach=0, coupling=1.0),
        dict(main_len=5, side_len=1, attach=6, coupling=1.0),
        dict(main_len=5, side_len=1, attach=1, coupling=0.0),
        dict(main_len=5, side_len=1, attach=1, coupling=-2.0),
        dict(main_len=5, side_len=1, attach=1, coupling=float("nan")),
        dict(main_len=5, side_len=1, attach=1, coupling=float("inf")),
        dict(main_len=5.0, side_len=1, attach=1, coupling=1.0),
        dict(main_len=5, side_len=1.5, attach=1, coupling=1.0),
        dict(main_len=5, side_len=1, attach=2.0, coupling=1.0),
        dict(main_len=5, side_len=1, attach=1, coupling=True),
    ],
)
def test_invalid_specs_rejected(kwargs):
    with pytest.raises(SpecError):
        validate_spec(TripleGraphSpec(**kwargs))


def test_numpy_integer_parameters_accepted():
    spec = TripleGraphSpec(
        main_len=np.int64(5), side_len=np.int64(1), attach=np.int64(2),
        coupling=np.float64(2.0),
    )
    assert validate_spec(spec) is spec


def test_partition_reference():
    spec = TripleGraphSpec(main_len=11, side_len=2, attach=5, coupling=10.0)
    parts = partition(spec)
    assert parts.left == (1, 2, 3, 4)
    assert parts.connection == (5,)
    assert parts.right == (6, 7, 8, 9, 10, 11)
    assert parts.side == (12, 13)


def test_partition_covers_all_sites_disjointly():
    rng = np.random.default_rng(SEED + 1)
    for spec in random_specs(rng, 30):
        parts = partition(spec)
        groups = [parts.left, parts.connection, parts.right, parts.side]
        merged = sorted(s for g in groups for s in g)
        assert merged == list(range(1, spec.dim + 1))


def test_partition_edge_attachments():
    left_end = partition(TripleGraphSpec(main_len=4, side_len=1, attach=1, coupling=1.0))
    assert left_end.left == ()
    assert left_end.right == (2, 3, 4)
    right_end = partition(TripleGraphSpec(main_len=4, side_len=0, attach=4, coupling=1.0))
    assert right_end.right == ()
    assert right_end.side == ()
