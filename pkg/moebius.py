"""Möbius function of the lattice of finite-index subgroups of Z^d.

Two independent evaluations of μ(M, L) for L ≤ M:

- `moebius_closed`: the elementary-abelian closed form. μ vanishes unless
  every invariant factor of M/L is squarefree; otherwise, with n_p the number
  of factors divisible by p, μ = Π_p (-1)^{n_p} p^{n_p(n_p-1)/2}.
- `moebius_recursive`: the defining recursion μ(L, L) = 1 and
  μ(M, L) = -Σ_{L < L'' ≤ M} μ(M, L''), evaluated over the enumerated interval.

The recursive form is the ground truth the closed form is tested against.
"""
import math
from collections import Counter
from functools import lru_cache

from sympy import Integer, ceiling, factorint, log

import config
from errors import CapExceededError, ConsistencyError, DomainError
from lattice import Sublattice, contains, quotient_invariants, superlattices

# μ is a signed big integer; kept as a plain int.
MoebiusValue = int


def _require_contains(M: Sublattice, L: Sublattice):
    if not contains(M, L):
        raise DomainError(f"{L} is not contained in {M}")


def subgroup_is_normal(M: Sublattice, L: Sublattice) -> bool:
    """Whether L is normal in M. Always true: Z^d is abelian."""
    return M.d == L.d


def closed_form_from_invariants(factors) -> MoebiusValue:
    """μ of an abelian group interval [0, A] from A's invariant factors."""
    n_p = Counter()
    for f in factors:
        for p, e in factorint(f).items():
            if e > 1:
                return 0
            n_p[p] += 1
    value = 1
    for p, n in n_p.items():
        value *= (-1) ** n * p ** (n * (n - 1) // 2)
    return value


@lru_cache(maxsize=None)
def moebius_closed(M: Sublattice, L: Sublattice) -> MoebiusValue:
    """μ(M, L) from the invariant factors of M/L."""
    _require_contains(M, L)
    if not subgroup_is_normal(M, L):
        # Closure-operator vanishing for non-normal subgroups; unreachable
        # for sublattices of Z^d.
        raise ConsistencyError(f"non-normal pair reached in an abelian lattice: {M} / {L}")
    return closed_form_from_invariants(quotient_invariants(M, L))


def moebius_recursive(M: Sublattice, L: Sublattice, cap: int = None) -> MoebiusValue:
    """μ(M, L) by the defining recursion over the interval [L, M].

    Refuses intervals whose quotient |M/L| exceeds `cap`
    (default ORBITZETA_MOEBIUS_CAP, 256).
    """
    _require_contains(M, L)
    cap = config.moebius_cap() if cap is None else cap
    k = L.index // M.index
    if k > cap:
        raise CapExceededError('Möbius interval', k, cap)
    return _moebius_recursive(M, L)


@lru_cache(maxsize=None)
def _moebius_recursive(M: Sublattice, L: Sublattice) -> MoebiusValue:
    if M == L:
        return 1
    total = 0
    for mid in superlattices(L):
        if mid != L and contains(M, mid):
            total += _moebius_recursive(M, mid)
    return -total


@lru_cache(maxsize=None)
def moebius_bound(k: int) -> int:
    """⌈k^{(log₂k)/2}⌉, the square root of the explicit envelope |μ|² ≤ k^{log₂k}."""
    if k < 1:
        raise DomainError(f"quotient size must be >= 1, got {k}")
    if k & (k - 1) == 0:
        # k = 2^m: the envelope is 2^{m²}, so the least B with B² >= 2^{m²}
        m = k.bit_length() - 1
        return math.isqrt((1 << (m * m)) - 1) + 1
    # transcendental otherwise; sympy settles the integer part exactly
    n = Integer(k)
    return int(ceiling(n ** (log(n, 2) / 2)))


def moebius_bound_squared(k: int) -> int:
    """Π_p p^{v_p(k)²}: the exact integer between |μ|² and k^{log₂k}."""
    if k < 1:
        raise DomainError(f"quotient size must be >= 1, got {k}")
    return math.prod(p ** (e * e) for p, e in factorint(k).items())


def bound_holds(mu: MoebiusValue, k: int) -> bool:
    """|μ|² ≤ Π_p p^{v_p(k)²} ≤ k^{log₂k}, checked exactly then in log form."""
    squared = moebius_bound_squared(k)
    if mu * mu > squared:
        return False
    if k == 1:
        return squared == 1
    return math.log2(squared) <= math.log2(k) ** 2 + 1e-9


def expected_sign(factors) -> int:
    """(-1)^{Σ_p n_p} for an elementary-abelian quotient."""
    total = sum(len(factorint(f)) for f in factors)
    return -1 if total % 2 else 1
