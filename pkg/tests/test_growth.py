import math
from fractions import Fraction

import pytest
from sympy import primerange

import growth
from errors import CapExceededError, DomainError
from growth import (
    a_heisenberg_sieve,
    a_zd_sieve,
    check_bounds,
    fitted_growth_constant,
    free_abelian,
    growth_constant,
    growth_sequence,
    heisenberg,
    mertens_constant,
    mertens_main_term,
    mertens_ratio,
    multiplicativity_violation,
    parse_group,
    partial_summation_constant,
    partial_summation_remainder,
    sigma_bound_violation,
    zeta_product_coefficients,
)

SIGMA = [1, 3, 4, 7, 6, 12, 8, 15, 13, 18, 12, 28]


def test_parse_group():
    assert parse_group('z:3') == free_abelian(3)
    assert parse_group(' Z : 2 ') == free_abelian(2)
    assert parse_group('heisenberg') == heisenberg()
    assert parse_group('z:1').label == 'z:1'
    for bad in ('z:0', 'q:2', '', None):
        with pytest.raises(DomainError):
            parse_group(bad)


def test_zd_sieve_small_values():
    assert list(a_zd_sieve(1, 10).a) == [1] * 10
    assert list(a_zd_sieve(2, 12).a) == SIGMA
    assert a_zd_sieve(3, 2).a_n(2) == 7
    seq = a_zd_sieve(2, 12)
    assert seq.s_n(3) == 8
    with pytest.raises(DomainError):
        seq.a_n(13)
    with pytest.raises(DomainError):
        a_zd_sieve(0, 5)


@pytest.mark.parametrize('d', [1, 2, 3, 4])
def test_recursion_matches_zeta_product(d):
    assert list(a_zd_sieve(d, 1000).a) == zeta_product_coefficients(d, 1000)[1:]


def test_heisenberg_small_values():
    seq = a_heisenberg_sieve(200)
    assert seq.a_n(1) == 1
    assert seq.a_n(2) == 3
    for p in primerange(2, 100):
        assert seq.a_n(p) == 1 + p
    assert multiplicativity_violation(seq) is None
    assert seq.method == 'heisenberg-euler-product-int64'


def test_heisenberg_int64_and_bigint_paths_agree(monkeypatch):
    fast = a_heisenberg_sieve.__wrapped__(3000)
    monkeypatch.setattr(growth, 'INT64_SAFE_HORIZON', 0)
    exact = a_heisenberg_sieve.__wrapped__(3000)
    assert exact.method == 'heisenberg-euler-product-bigint'
    assert fast.a == exact.a


def test_multiplicativity_detects_violation():
    seq = a_zd_sieve(2, 12)
    broken = growth.GrowthSequence(seq.group, 12, seq.a[:5] + (99,) + seq.a[6:], seq.s, 'edited')
    assert multiplicativity_violation(broken) == (2, 3)
    assert multiplicativity_violation(seq) is None


@pytest.mark.parametrize('d', [2, 3, 4])
def test_zd_growth_is_multiplicative(d):
    assert multiplicativity_violation(a_zd_sieve(d, 10 ** 4)) is None


@pytest.mark.parametrize('group', [free_abelian(1), free_abelian(2), free_abelian(3), heisenberg()])
def test_bounds_hold(group):
    report = check_bounds(growth_sequence(group, 2000))
    assert report.ok, report.violation
    assert report.checked == 2000


def test_bounds_report_violation():
    seq = a_zd_sieve(2, 12)
    broken = growth.GrowthSequence(seq.group, 12, (1, 0) + seq.a[2:], seq.s, 'edited')
    report = check_bounds(broken)
    assert not report.ok
    assert report.violation[0] == 2


def test_sigma_bound():
    assert sigma_bound_violation(5000) is None


def test_mertens_main_term_exact_and_float():
    seq = a_zd_sieve(2, 100)
    assert mertens_main_term(seq, 4) == Fraction(67, 12)
    exact = mertens_main_term(seq, 100)
    assert math.isclose(mertens_main_term(seq, 100, 'float'), float(exact), rel_tol=1e-12)
    double_sum = sum((Fraction(100 // k, k) for k in range(1, 101)), Fraction(0))
    assert exact == double_sum
    with pytest.raises(DomainError):
        mertens_main_term(seq, 4, 'approximate')
    with pytest.raises(DomainError):
        mertens_main_term(seq, 101)


def test_mertens_exact_cap(monkeypatch):
    monkeypatch.setenv('ORBITZETA_EXACT_CAP', '10')
    with pytest.raises(CapExceededError):
        mertens_main_term(a_zd_sieve(2, 20), 20)


def test_growth_constants():
    assert math.isclose(growth_constant(free_abelian(2)), math.pi ** 2 / 12, rel_tol=1e-12)
    assert growth_constant(free_abelian(1)) == 1.0
    assert math.isclose(growth_constant(heisenberg()), 1.12549, rel_tol=1e-4)
    assert math.isclose(mertens_constant(free_abelian(2)), math.pi ** 2 / 6, rel_tol=1e-12)
    # twice the growth constant: Σ a_n/n ~ 2c N ln N for γ = 2, δ = 1
    assert math.isclose(mertens_constant(heisenberg()), 2 * growth_constant(heisenberg()), rel_tol=1e-12)
    assert math.isclose(mertens_constant(heisenberg()), 2.25100, rel_tol=1e-4)
    with pytest.raises(DomainError):
        mertens_constant(free_abelian(1))


def test_zd_ratios_approach_constants():
    seq = a_zd_sieve(2, 10_000)
    assert abs(fitted_growth_constant(seq) / growth_constant(free_abelian(2)) - 1) < 0.01
    assert abs(mertens_ratio(seq, 10_000) / mertens_constant(free_abelian(2)) - 1) < 0.005


@pytest.mark.slow
def test_heisenberg_growth_at_one_million():
    seq = a_heisenberg_sieve(1_000_000)
    target = growth_constant(heisenberg())
    assert target / 2 <= fitted_growth_constant(seq) <= 2 * target
    assert multiplicativity_violation(seq, 10 ** 4) is None


def test_partial_summation():
    assert partial_summation_remainder(1, 2, 1) == -2
    assert partial_summation_remainder(1, 2, 2) == -6
    for e in range(1, 5):
        for b in (2, 3):
            c = partial_summation_constant(e, b, 60)
            assert 0 < c <= 8
    with pytest.raises(DomainError):
        partial_summation_remainder(0, 2, 5)
