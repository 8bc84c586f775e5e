import pytest

from algebraic import (
    gf2_rank,
    ledrappier_fix,
    shape_sensitivity_witness,
    solenoid_fix,
    solenoid_fix_lattice,
    solenoid_lattice,
)
from errors import DomainError, UnsupportedOperationError
from lattice import Sublattice, contains, superlattices, sublattices_up_to


def test_gf2_rank():
    assert gf2_rank([0b011, 0b110, 0b101]) == 2
    assert gf2_rank([0b001, 0b010, 0b100]) == 3
    assert gf2_rank([]) == 0


def test_single_cell_torus():
    report = ledrappier_fix(Sublattice.identity(2))
    assert (report.kernel_dim, report.fix_count) == (0, 1)


@pytest.mark.parametrize('k', range(1, 7))
def test_dyadic_squares_have_one_fixed_point(k):
    assert ledrappier_fix(Sublattice.diagonal(2 ** k, 2 ** k)).fix_count == 1


@pytest.mark.parametrize('n,expected', [(3, 4), (7, 2 ** 6), (15, 2 ** 14)])
def test_odd_squares(n, expected):
    assert ledrappier_fix(Sublattice.diagonal(n, n)).fix_count == expected


def test_mersenne_family_grows():
    counts = [ledrappier_fix(Sublattice.diagonal(2 ** k - 1, 2 ** k - 1)).fix_count for k in range(2, 6)]
    assert counts == sorted(set(counts))
    assert counts[-1] == 2 ** 30


def test_fixed_sets_grow_under_refinement():
    for L in sublattices_up_to(2, 12):
        for M in superlattices(L):
            assert contains(M, L)
            assert ledrappier_fix(L).fix_count >= ledrappier_fix(M).fix_count


def test_same_lattice_from_other_generators():
    other = Sublattice.from_generators([(3, 3), (0, 3), (6, 3)])
    assert ledrappier_fix(other) == ledrappier_fix(Sublattice.diagonal(3, 3))


def test_ledrappier_needs_dimension_two():
    with pytest.raises(DomainError):
        ledrappier_fix(Sublattice.identity(3))


def test_shape_sensitivity_witness():
    witness = shape_sensitivity_witness()
    assert witness.first.L.index == witness.second.L.index == 9
    assert (witness.first.fix_count, witness.second.fix_count) == (4, 1)


@pytest.mark.parametrize('family,n,expected', [
    ('horizontal', 1, 1),
    ('horizontal', 5, 31),
    ('vertical', 7, 1),
    ('horizontal', 20, 2 ** 20 - 1),
])
def test_solenoid_families(family, n, expected):
    assert solenoid_fix(family, n) == expected
    assert solenoid_fix_lattice(solenoid_lattice(family, n)) == expected


def test_solenoid_rejects_other_shapes():
    with pytest.raises(DomainError):
        solenoid_fix('diagonal', 3)
    with pytest.raises(DomainError):
        solenoid_fix('horizontal', 0)
    with pytest.raises(UnsupportedOperationError):
        solenoid_fix_lattice(Sublattice.diagonal(2, 2))
    with pytest.raises(UnsupportedOperationError):
        solenoid_fix_lattice(Sublattice(((3, 1), (0, 2))))
    assert solenoid_fix_lattice(Sublattice.identity(2)) == 1
