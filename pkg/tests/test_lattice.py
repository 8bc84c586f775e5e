import math
import random

import pytest
from sympy import divisor_sigma

from errors import DomainError
from lattice import (
    Sublattice,
    box_representatives,
    contains,
    coordinates,
    enumerate_sublattices,
    index,
    parse_sublattice,
    quotient_invariants,
    quotient_type,
    reduce_vector,
    superlattices,
    sublattices_up_to,
)

Z2 = Sublattice.identity(2)


def test_enumerate_small_cases():
    assert enumerate_sublattices(2, 1) == (Z2,)
    two = enumerate_sublattices(2, 2)
    assert set(two) == {
        Sublattice(((1, 0), (0, 2))),
        Sublattice(((1, 1), (0, 2))),
        Sublattice(((2, 0), (0, 1))),
    }
    assert len(enumerate_sublattices(3, 2)) == 7


@pytest.mark.parametrize('n', range(1, 31))
def test_enumeration_count_is_sigma(n):
    lattices = enumerate_sublattices(2, n)
    assert len(lattices) == int(divisor_sigma(n))
    assert len(set(lattices)) == len(lattices)
    assert all(index(L) == n for L in lattices)


def test_enumeration_rejects_bad_arguments():
    with pytest.raises(DomainError):
        enumerate_sublattices(0, 3)
    with pytest.raises(DomainError):
        enumerate_sublattices(2, 0)


def test_sublattices_up_to_counts():
    assert len(list(sublattices_up_to(2, 4))) == 1 + 3 + 4 + 7


def test_canonical_form_is_validated():
    with pytest.raises(DomainError):
        Sublattice(((2, 3), (0, 3)))
    with pytest.raises(DomainError):
        Sublattice(((1, 0), (1, 1)))
    with pytest.raises(DomainError):
        Sublattice(((0, 0), (0, 1)))


def test_from_generators():
    assert Sublattice.from_generators([(2, 0), (0, 2), (1, 1)]) == Sublattice(((1, 1), (0, 2)))
    assert Sublattice.from_generators([(4, 6), (2, 2)]) == Sublattice.diagonal(2, 2)
    assert Sublattice.from_generators([(0, 3), (3, 3)]) == Sublattice.diagonal(3, 3)
    with pytest.raises(DomainError):
        Sublattice.from_generators([(1, 1), (2, 2)])


def test_parse_and_format():
    L = parse_sublattice('2 1; 0 3')
    assert L == Sublattice(((2, 1), (0, 3)))
    assert str(L) == '2 1; 0 3'
    assert parse_sublattice(str(L)) == L
    with pytest.raises(DomainError):
        parse_sublattice('2 3; 0 3')
    assert parse_sublattice('2 3; 0 3', canonicalize=True) == Sublattice.diagonal(2, 3)
    with pytest.raises(DomainError):
        parse_sublattice('1 0; 0 1', d=3)
    with pytest.raises(DomainError):
        parse_sublattice('a b; c d')
    with pytest.raises(DomainError):
        parse_sublattice('')


def test_containment_and_coordinates():
    assert contains(Z2, Sublattice.diagonal(4, 1))
    assert contains(Sublattice.diagonal(2, 2), Sublattice.diagonal(4, 4))
    assert not contains(Sublattice.diagonal(2, 1), Sublattice.diagonal(1, 2))
    assert coordinates(Sublattice(((2, 1), (0, 3))), (4, 5)) == (2, 1)
    assert coordinates(Sublattice.diagonal(2, 2), (1, 0)) is None
    with pytest.raises(DomainError):
        contains(Z2, Sublattice.identity(3))


def test_superlattices_of_diag_2_2():
    ups = superlattices(Sublattice.diagonal(2, 2))
    assert len(ups) == 5
    assert ups[0] == Z2
    assert ups[-1] == Sublattice.diagonal(2, 2)
    assert sum(1 for M in ups if M.index == 2) == 3


def test_quotient_invariants():
    assert quotient_type(Z2) == ()
    assert quotient_type(Sublattice.diagonal(2, 2)) == (2, 2)
    assert quotient_type(Sublattice.diagonal(4, 1)) == (4,)
    assert quotient_type(Sublattice(((2, 1), (0, 2)))) == (4,)
    assert quotient_type(Sublattice.diagonal(2, 6)) == (2, 6)
    assert quotient_invariants(Sublattice.diagonal(2, 1), Sublattice.diagonal(4, 2)) == (2, 2)
    with pytest.raises(DomainError):
        quotient_invariants(Sublattice.diagonal(2, 1), Sublattice.diagonal(1, 2))


def test_quotient_order_is_index():
    for L in sublattices_up_to(2, 12):
        order = 1
        for f in quotient_type(L):
            order *= f
        assert order == L.index


def test_torus_helpers():
    assert box_representatives(Sublattice.diagonal(2, 1)) == ((0, 0), (1, 0))
    assert len(box_representatives(Sublattice.diagonal(2, 2))) == 4
    assert reduce_vector(Sublattice.diagonal(2, 3), (5, 7)) == (1, 1)
    assert reduce_vector(Sublattice(((2, 1), (0, 3))), (3, 0)) == (1, 2)


UNIMODULAR_2 = [
    ((1, 0), (0, 1)),
    ((0, 1), (1, 0)),
    ((1, 1), (0, 1)),
    ((2, 1), (1, 1)),
    ((1, -3), (0, -1)),
    ((-5, 2), (-3, 1)),
]


def _mix(U, rows):
    return [tuple(sum(u * r[j] for u, r in zip(urow, rows)) for j in range(len(rows))) for urow in U]


@pytest.mark.parametrize('U', UNIMODULAR_2)
def test_from_generators_ignores_the_choice_of_basis(U):
    for L in sublattices_up_to(2, 12):
        generators = _mix(U, L.rows)
        assert Sublattice.from_generators(generators) == L
        redundant = generators + [tuple(a + b for a, b in zip(*generators))]
        assert Sublattice.from_generators(redundant) == L


def test_from_generators_in_three_dimensions():
    rng = random.Random(20)
    for L in sublattices_up_to(3, 8):
        rows = [list(r) for r in L.rows]
        for _ in range(6):
            i, j = rng.sample(range(3), 2)
            c = rng.randint(-4, 4)
            rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
            rows[i], rows[j] = rows[j], rows[i]
        assert Sublattice.from_generators(rows) == L


def test_containment_is_a_partial_order():
    lattices = list(sublattices_up_to(2, 12))
    above = {L: {M for M in lattices if contains(M, L)} for L in lattices}
    for L in lattices:
        assert L in above[L]
        for M in above[L]:
            assert above[M] <= above[L]
            if M != L:
                assert L not in above[M]


def test_quotient_order_is_index_ratio():
    for L in sublattices_up_to(2, 20):
        for M in superlattices(L):
            assert math.prod(quotient_invariants(M, L)) * M.index == L.index
