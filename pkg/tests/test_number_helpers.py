from fractions import Fraction

import numpy as np
import pytest

from errors import DomainError
from number_helpers import (
    classical_mobius,
    dirichlet_convolve,
    dirichlet_convolve_int64,
    dirichlet_convolve_sparse,
    divisors,
    format_decimal,
    format_fraction,
    harmonic_weighted_sum,
    lcm_upto,
    mobius_sieve,
    ordered_factorisations,
    power_sequence,
    sparse_to_int64,
)


def test_divisors():
    assert divisors(1) == (1,)
    assert divisors(12) == (1, 2, 3, 4, 6, 12)
    assert divisors(49) == (1, 7, 49)
    with pytest.raises(DomainError):
        divisors(0)


def test_ordered_factorisations():
    assert sorted(ordered_factorisations(4, 2)) == [(1, 4), (2, 2), (4, 1)]
    assert len(list(ordered_factorisations(12, 3))) == 18


def test_classical_mobius_matches_sieve():
    mu = mobius_sieve(10)
    assert mu == [0, 1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    assert all(classical_mobius(n) == mu[n] for n in range(1, 11))
    assert classical_mobius(30) == -1


def test_divisor_count_by_convolution():
    ones = power_sequence(0, 12)
    tau = dirichlet_convolve(ones, ones, 12)
    assert tau[1:7] == [1, 2, 2, 3, 2, 4]
    fast = dirichlet_convolve_int64(np.array(ones, dtype=np.int64), np.array(ones, dtype=np.int64), 12)
    assert fast.tolist() == tau


def test_sparse_convolution_agrees_with_dense():
    sparse = {1: 1, 4: 2, 9: 3}
    dense = power_sequence(1, 30)
    expected = dirichlet_convolve(sparse_to_int64(sparse, 30).tolist(), dense, 30)
    assert dirichlet_convolve_sparse(dense, sparse, 30) == expected


def test_harmonic_weighted_sum():
    assert lcm_upto(6) == 60
    assert harmonic_weighted_sum([0, 1, 1, 1], 3) == Fraction(11, 6)


@pytest.mark.parametrize('value,precision,expected', [
    (Fraction(1, 3), 6, '0.333333'),
    (Fraction(2, 3), 6, '0.666667'),
    (Fraction(-1, 10 ** 9), 6, '0.000000'),
    (Fraction(5, 2), 0, '3'),
    (Fraction(-5, 2), 0, '-3'),
    (Fraction(11, 4), 6, '2.750000'),
])
def test_format_decimal(value, precision, expected):
    assert format_decimal(value, precision) == expected


def test_format_fraction():
    assert format_fraction(Fraction(7, 4)) == '7/4'
    assert format_fraction(3) == '3'
    assert format_fraction(Fraction(-6, 4)) == '-3/2'
