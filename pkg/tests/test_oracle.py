from fractions import Fraction

import pytest

from errors import CapExceededError, DomainError
from lattice import Sublattice, superlattices
from oracle import (
    PeriodicConfiguration,
    configurations,
    coset_representatives,
    mertens_oracle,
    orbit_count_oracle,
    pi_oracle,
    stabilizer,
    stabilizer_census,
    translate,
    verify_orbits,
)
from shiftorbits import full_shift, mertens, orbit_count, pi

Z2 = Sublattice.identity(2)
BINARY = full_shift(2, 2)
TERNARY = full_shift(2, 3)


def test_coset_representatives():
    assert coset_representatives(Z2) == [(0, 0)]
    assert len(coset_representatives(Sublattice.diagonal(2, 2))) == 4
    assert coset_representatives(Sublattice.diagonal(2, 1)) == [(0, 0), (1, 0)]


def test_configuration_validation():
    with pytest.raises(DomainError):
        PeriodicConfiguration(Sublattice.diagonal(2, 1), (0,))
    with pytest.raises(DomainError):
        PeriodicConfiguration(Sublattice.diagonal(2, 1), (0, 2), b=2)


def test_stabilizer_examples():
    L = Sublattice.diagonal(2, 2)
    assert stabilizer(PeriodicConfiguration(L, (1, 1, 1, 1))) == Z2
    assert stabilizer(PeriodicConfiguration(Sublattice.diagonal(2, 1), (0, 1))) == Sublattice.diagonal(2, 1)
    # cells (0,0), (0,1), (1,0), (1,1): the diagonal pair is fixed by (1, 1)
    diagonal = stabilizer(PeriodicConfiguration(L, (1, 0, 0, 1)))
    assert diagonal == Sublattice(((1, 1), (0, 2)))
    assert diagonal.index == 2


def test_stabilizer_is_constant_on_orbits():
    L = Sublattice(((2, 1), (0, 3)))
    for cfg in configurations(BINARY, L):
        stab = stabilizer(cfg)
        assert stab in superlattices(L)
        for g in coset_representatives(L):
            assert stabilizer(translate(cfg, g)) == stab


@pytest.mark.parametrize('sys,L,expected', [
    (BINARY, Z2, 2),
    (BINARY, Sublattice.diagonal(2, 2), 2),
    (BINARY, Sublattice.diagonal(4, 1), 3),
    (TERNARY, Sublattice.diagonal(2, 1), 3),
])
def test_orbit_count_oracle_examples(sys, L, expected):
    assert orbit_count_oracle(sys, L) == expected


def test_census_is_burnside_consistent():
    L = Sublattice.diagonal(2, 3)
    census = stabilizer_census(TERNARY, L)
    assert sum(census.values()) == 3 ** 6
    for M, n in census.items():
        assert n == M.index * orbit_count_oracle(TERNARY, M)


def test_pi_and_mertens_oracles():
    assert pi_oracle(BINARY, 1) == 2
    assert mertens_oracle(BINARY, 1) == 1
    assert pi_oracle(BINARY, 2) == 5
    assert mertens_oracle(BINARY, 2) == Fraction(7, 4)
    assert pi_oracle(BINARY, 4) == pi(BINARY, 4)
    assert mertens_oracle(BINARY, 4) == mertens(BINARY, 4)


def test_oracle_cap(monkeypatch):
    monkeypatch.setenv('ORBITZETA_ORACLE_CAP', '8')
    with pytest.raises(CapExceededError):
        orbit_count_oracle(BINARY, Sublattice.diagonal(2, 2))
    with pytest.raises(CapExceededError):
        pi_oracle(BINARY, 4)


@pytest.mark.parametrize('sys,n_max', [(BINARY, 10), (TERNARY, 8)])
def test_oracle_equivalence(sys, n_max):
    rows = verify_orbits(sys, n_max)
    assert all(r.agrees for r in rows)
    assert sum(r.oracle for r in rows) == pi(sys, n_max)


def test_parallel_verification_keeps_order():
    serial = verify_orbits(BINARY, 5, threads=1)
    parallel = verify_orbits(BINARY, 5, threads=2)
    assert serial == parallel
    assert [r.lattice for r in serial][:2] == [Z2, Sublattice.diagonal(1, 2)]
    assert all(r.inversion == orbit_count(BINARY, r.lattice) for r in parallel)
