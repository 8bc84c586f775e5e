"""Subgroup growth a_n(G), s_n(G) for G = Z^d and the discrete Heisenberg group.

Sequences are produced by Dirichlet-convolution sieves:

- Z^d: a_n(Z^1) = 1 and a_n(Z^d) = Σ_{k|n} a_{n/k}(Z^{d-1}) k^{d-1}, i.e.
  the coefficients of ζ(z)ζ(z-1)⋯ζ(z-d+1).
- Heisenberg: the coefficients of ζ(z)ζ(z-1)ζ(2z-2)ζ(2z-3)/ζ(3z-3).

Bounds and asymptotics use the natural logarithm throughout.
"""
import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from sympy import zeta

import config
from errors import CapExceededError, DomainError
from number_helpers import (
    compensated_sum,
    dirichlet_convolve,
    dirichlet_convolve_int64,
    dirichlet_convolve_sparse,
    harmonic_weighted_sum,
    mobius_sieve,
    power_sequence,
    sparse_to_int64,
)

FREE_ABELIAN = 'free-abelian'
HEISENBERG = 'heisenberg'

# Largest int64 values are the coefficients of ζ(z)ζ(z-1)ζ(2z-2)ζ(2z-3) before
# the ζ(3z-3) division: at most τ_4(n) terms, each ≤ n^{3/2}, so below 10^15
# for n ≤ 2·10^6, where τ_4(n) < 2·10^5. The division adds at most
# n^{1/3} such terms, still far under 2^63.
INT64_SAFE_HORIZON = 2_000_000


@dataclass(frozen=True)
class GroupDescriptor:
    """Which group, its rank r(G), abelianization rank d(G) and growth exponents."""

    kind: str
    r: int
    dab: int
    gamma: int
    delta: int
    dimension: int = None

    @property
    def label(self) -> str:
        return f"z:{self.dimension}" if self.kind == FREE_ABELIAN else HEISENBERG

    @property
    def is_free_abelian(self) -> bool:
        return self.kind == FREE_ABELIAN


def free_abelian(d: int) -> GroupDescriptor:
    if d < 1:
        raise DomainError(f"dimension must be >= 1, got {d}")
    return GroupDescriptor(FREE_ABELIAN, r=d, dab=d, gamma=d, delta=0, dimension=d)


def heisenberg() -> GroupDescriptor:
    return GroupDescriptor(HEISENBERG, r=3, dab=2, gamma=2, delta=1)


_GROUP_RE = re.compile(r'^\s*(?:z|Z)\s*:\s*(\d+)\s*$')


def parse_group(text: str) -> GroupDescriptor:
    """'z:3' -> free abelian of rank 3; 'heisenberg' -> the Heisenberg group."""
    if text is None:
        raise DomainError('missing group descriptor')
    if text.strip().lower() in {'heisenberg', 'h', 'h3'}:
        return heisenberg()
    m = _GROUP_RE.match(text)
    if not m:
        raise DomainError(f"unknown group descriptor {text!r} (expected z:D or heisenberg)")
    return free_abelian(int(m.group(1)))


@dataclass(frozen=True)
class GrowthSequence:
    """a_1..a_N and running sums s_1..s_N; `method` names the sieve used."""

    group: GroupDescriptor
    horizon: int
    a: tuple
    s: tuple
    method: str

    def a_n(self, n: int) -> int:
        self._check(n)
        return self.a[n - 1]

    def s_n(self, n: int) -> int:
        self._check(n)
        return self.s[n - 1]

    def _check(self, n):
        if not 1 <= n <= self.horizon:
            raise DomainError(f"n={n} outside the computed range 1..{self.horizon}")


def _sequence(group, coeffs, method) -> GrowthSequence:
    a = tuple(int(x) for x in coeffs[1:])
    return GrowthSequence(group, len(a), a, tuple(itertools.accumulate(a)), method)


@lru_cache(maxsize=32)
def a_zd_sieve(d: int, N: int) -> GrowthSequence:
    """a_n(Z^d) for n ≤ N by d-1 divisor-sum sieve passes over exact ints."""
    if d < 1 or N < 1:
        raise DomainError(f"a_zd_sieve needs d >= 1 and N >= 1, got d={d}, N={N}")
    a = [0] + [1] * N
    for e in range(1, d):
        a = dirichlet_convolve(power_sequence(e, N), a, N)
    return _sequence(free_abelian(d), a, 'zd-divisor-sieve')


def zeta_product_coefficients(d: int, N: int) -> list:
    """Coefficients 1..N of ζ(z)ζ(z-1)⋯ζ(z-d+1), as [0, c_1, ..., c_N].

    Convolves n ↦ n^k for k = 0..d-1 directly; independent of the
    recursion used by `a_zd_sieve`.
    """
    if d < 1 or N < 1:
        raise DomainError(f"need d >= 1 and N >= 1, got d={d}, N={N}")
    out = power_sequence(0, N)
    for k in range(1, d):
        out = dirichlet_convolve(out, power_sequence(k, N), N)
    return out


def _heisenberg_sparse_factors(N: int):
    """ζ(2z-2), ζ(2z-3) and 1/ζ(3z-3) as sparse {n: coeff} maps up to N."""
    squares_w2 = {}
    squares_w3 = {}
    m = 1
    while m * m <= N:
        squares_w2[m * m] = m ** 2
        squares_w3[m * m] = m ** 3
        m += 1
    cube_root = 1
    while (cube_root + 1) ** 3 <= N:
        cube_root += 1
    mu = mobius_sieve(cube_root)
    cubes = {m ** 3: mu[m] * m ** 3 for m in range(1, cube_root + 1) if mu[m]}
    return squares_w2, squares_w3, cubes


@lru_cache(maxsize=8)
def a_heisenberg_sieve(N: int) -> GrowthSequence:
    """a_n of the discrete Heisenberg group for n ≤ N.

    Convolves five arithmetic sequences: all-ones, n, (m² ↦ m²), (m² ↦ m³)
    and the inverse factor (m³ ↦ μ(m)m³). Uses numpy int64 while every
    coefficient provably fits, exact Python ints beyond that.
    """
    if N < 1:
        raise DomainError(f"a_heisenberg_sieve needs N >= 1, got {N}")
    sq2, sq3, cubes = _heisenberg_sparse_factors(N)
    if N <= INT64_SAFE_HORIZON:
        ones = np.ones(N + 1, dtype=np.int64)
        ones[0] = 0
        ident = np.arange(N + 1, dtype=np.int64)
        acc = dirichlet_convolve_int64(ones, ident, N)
        for factor in (sq2, sq3, cubes):
            acc = dirichlet_convolve_int64(sparse_to_int64(factor, N), acc, N)
        return _sequence(heisenberg(), acc.tolist(), 'heisenberg-euler-product-int64')
    acc = dirichlet_convolve(power_sequence(0, N), power_sequence(1, N), N)
    for factor in (sq2, sq3, cubes):
        acc = dirichlet_convolve_sparse(acc, factor, N)
    return _sequence(heisenberg(), acc, 'heisenberg-euler-product-bigint')


def growth_sequence(group: GroupDescriptor, N: int) -> GrowthSequence:
    if group.is_free_abelian:
        return a_zd_sieve(group.dimension, N)
    return a_heisenberg_sieve(N)


@dataclass(frozen=True)
class BoundsReport:
    """Outcome of `check_bounds`: `violation` is None on success."""

    group: GroupDescriptor
    horizon: int
    checked: int
    violation: tuple = None

    @property
    def ok(self) -> bool:
        return self.violation is None


def check_bounds(seq: GrowthSequence) -> BoundsReport:
    """Verify the growth bounds over the whole sequence.

    For every group: n^{d(G)-1} ≤ a_n(G), a_n(G) < n^{r(G)} and
    s_n(G) < n^{r(G)+1} for n > 1. For Z^d additionally
    a_n ≤ 3^d n^{d-1} (ln n)^{d-1} for n ≥ 2. Returns the first violation as
    (n, bound name, value, limit).
    """
    g = seq.group
    checked = 0
    for n in range(1, seq.horizon + 1):
        a = seq.a[n - 1]
        lower = n ** (g.dab - 1)
        if a < lower:
            return BoundsReport(g, seq.horizon, checked, (n, 'lower n^(d(G)-1)', a, lower))
        if n > 1:
            if a >= n ** g.r:
                return BoundsReport(g, seq.horizon, checked, (n, 'upper n^r(G)', a, n ** g.r))
            if seq.s[n - 1] >= n ** (g.r + 1):
                return BoundsReport(g, seq.horizon, checked, (n, 'partial sum n^(r(G)+1)', seq.s[n - 1], n ** (g.r + 1)))
            if g.is_free_abelian:
                d = g.dimension
                limit = 3 ** d * n ** (d - 1) * math.log(n) ** (d - 1)
                if a > limit:
                    return BoundsReport(g, seq.horizon, checked, (n, 'upper 3^d n^(d-1) (ln n)^(d-1)', a, limit))
        checked += 1
    return BoundsReport(g, seq.horizon, checked)


def sigma_bound_violation(N: int):
    """First n in 2..N with σ(n) > 3 n ln n, or None."""
    sigma = a_zd_sieve(2, N)
    for n in range(2, N + 1):
        if sigma.a[n - 1] > 3 * n * math.log(n):
            return n
    return None


def mertens_main_term(seq: GrowthSequence, N: int, mode: str = 'exact'):
    """Σ_{n≤N} a_n/n as a reduced Fraction ('exact') or a float ('float').

    Exact mode refuses N above ORBITZETA_EXACT_CAP (10^4 by default); the
    common denominator lcm(1..N) grows like e^N.
    """
    if N < 1 or N > seq.horizon:
        raise DomainError(f"N={N} outside the computed range 1..{seq.horizon}")
    if mode == 'exact':
        cap = config.exact_cap()
        if N > cap:
            raise CapExceededError('exact Mertens main term horizon', N, cap)
        return harmonic_weighted_sum((0,) + seq.a, N)
    if mode == 'float':
        return compensated_sum(seq.a[n - 1] / n for n in range(1, N + 1))
    raise DomainError(f"unknown mode {mode!r} (expected exact or float)")


def asymptotic_ratio(seq: GrowthSequence, n: int) -> float:
    """s_n / (n^γ (ln n)^δ) with the group's growth exponents."""
    if n < 2:
        raise DomainError(f"asymptotic_ratio needs n >= 2, got {n}")
    g = seq.group
    return seq.s_n(n) / (n ** g.gamma * math.log(n) ** g.delta)


def growth_constant(group: GroupDescriptor) -> float:
    """lim s_n / (n^γ (ln n)^δ): Π_{k=2}^{d} ζ(k) / d for Z^d, ζ(2)²/(2ζ(3)) for Heisenberg."""
    if group.is_free_abelian:
        value = 1.0
        for k in range(2, group.dimension + 1):
            value *= float(zeta(k))
        return value / group.dimension
    return float(zeta(2)) ** 2 / (2 * float(zeta(3)))


def fitted_growth_constant(seq: GrowthSequence) -> float:
    """Observed s_N / (N^γ (ln N)^δ) at the horizon; a diagnostic only."""
    return asymptotic_ratio(seq, seq.horizon)


def mertens_ratio(seq: GrowthSequence, N: int) -> float:
    """Σ_{n≤N} a_n/n / (N^{γ-1} (ln N)^δ)."""
    if N < 2:
        raise DomainError(f"mertens_ratio needs N >= 2, got {N}")
    g = seq.group
    return mertens_main_term(seq, N, 'float') / (N ** (g.gamma - 1) * math.log(N) ** g.delta)


def mertens_constant(group: GroupDescriptor) -> float:
    """γ/(γ-1) · growth_constant, the partial-summation limit of `mertens_ratio` (γ > 1)."""
    if group.gamma <= 1:
        raise DomainError('the main term is logarithmic, not a power, when γ <= 1')
    return group.gamma / (group.gamma - 1) * growth_constant(group)


def multiplicativity_violation(seq: GrowthSequence, limit: int = None):
    """First coprime (m, n) with 1 < m < n, mn ≤ limit and a_{mn} ≠ a_m a_n; None if none."""
    limit = seq.horizon if limit is None else min(limit, seq.horizon)
    a = seq.a
    for m in range(2, limit + 1):
        if m * (m + 1) > limit:
            break
        for n in range(m + 1, limit // m + 1):
            if math.gcd(m, n) == 1 and a[m * n - 1] != a[m - 1] * a[n - 1]:
                return (m, n)
    return None


def partial_summation_remainder(e: int, b: int, N: int) -> Fraction:
    """Exact Σ_{n≤N} n^e b^n - (b/(b-1)) N^e b^N."""
    if e < 1 or b < 2 or N < 1:
        raise DomainError(f"need e >= 1, b >= 2, N >= 1; got e={e}, b={b}, N={N}")
    total = sum(n ** e * b ** n for n in range(1, N + 1))
    return total - Fraction(b, b - 1) * N ** e * b ** N


def partial_summation_constant(e: int, b: int, N: int) -> Fraction:
    """max_{n≤N} |R(n)| / (n^{e-1} b^n), the fitted constant in the O(N^{e-1} b^N) remainder."""
    return max(abs(partial_summation_remainder(e, b, n)) / (n ** (e - 1) * b ** n) for n in range(1, N + 1))
