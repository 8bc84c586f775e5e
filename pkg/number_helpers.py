"""Arithmetic helpers shared by the lattice, growth and orbit modules.

Divisor sieves, Dirichlet convolution (exact Python ints and a numpy int64
variant for large horizons), classical Möbius values, exact rational sums
and the rendering of rationals for CSV/JSON output. Callers should import
these rather than re-deriving divisor loops locally so the sieving logic is
the same everywhere.
"""
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np
from sympy import factorint

from errors import DomainError


@lru_cache(maxsize=4096)
def divisors(n: int) -> tuple:
    """Return the positive divisors of n in increasing order."""
    if n < 1:
        raise DomainError(f"divisors need n >= 1, got {n}")
    small, large = [], []
    k = 1
    while k * k <= n:
        if n % k == 0:
            small.append(k)
            if k * k != n:
                large.append(n // k)
        k += 1
    return tuple(small + large[::-1])


def ordered_factorisations(n: int, parts: int):
    """Yield every ordered tuple of `parts` positive integers with product n."""
    if parts == 1:
        yield (n,)
        return
    for k in divisors(n):
        for rest in ordered_factorisations(n // k, parts - 1):
            yield (k,) + rest


def classical_mobius(n: int) -> int:
    """The number-theoretic Möbius function μ(n)."""
    if n < 1:
        raise DomainError(f"mobius needs n >= 1, got {n}")
    exponents = factorint(n).values()
    if any(e > 1 for e in exponents):
        return 0
    return -1 if len(exponents) % 2 else 1


def mobius_sieve(limit: int) -> list:
    """Return [μ(0), μ(1), ..., μ(limit)] (μ(0) set to 0) by a linear sieve."""
    mu = [0] * (limit + 1)
    if limit >= 1:
        mu[1] = 1
    is_composite = [False] * (limit + 1)
    primes = []
    for i in range(2, limit + 1):
        if not is_composite[i]:
            primes.append(i)
            mu[i] = -1
        for p in primes:
            if i * p > limit:
                break
            is_composite[i * p] = True
            if i % p == 0:
                mu[i * p] = 0
                break
            mu[i * p] = -mu[i]
    return mu


def power_sequence(exponent: int, limit: int) -> list:
    """[0, 1^e, 2^e, ..., limit^e] as exact ints (index 0 unused)."""
    return [0] + [n ** exponent for n in range(1, limit + 1)]


def dirichlet_convolve(f: list, g: list, limit: int) -> list:
    """Dirichlet convolution (f*g)(n) = Σ_{k|n} f(k) g(n/k) for n ≤ limit.

    Both inputs are 1-indexed lists of length ≥ limit + 1 (index 0 ignored).
    Exact Python integers; O(limit log limit) multiplications.
    """
    out = [0] * (limit + 1)
    for k in range(1, limit + 1):
        fk = f[k]
        if fk == 0:
            continue
        for m in range(1, limit // k + 1):
            out[k * m] += fk * g[m]
    return out


def dirichlet_convolve_sparse(dense: list, sparse: dict, limit: int) -> list:
    """Convolve a dense 1-indexed sequence with a sparse one given as {n: coeff}."""
    out = [0] * (limit + 1)
    for k, c in sparse.items():
        if k > limit or c == 0:
            continue
        for m in range(1, limit // k + 1):
            out[k * m] += c * dense[m]
    return out


def dirichlet_convolve_int64(f: np.ndarray, g: np.ndarray, limit: int) -> np.ndarray:
    """numpy int64 Dirichlet convolution; the caller guarantees no overflow.

    One strided slice update per k: out[k·m] += f[k]·g[m] for m ≤ limit // k.
    """
    out = np.zeros(limit + 1, dtype=np.int64)
    for k in np.nonzero(f[1:limit + 1])[0] + 1:
        k = int(k)
        count = limit // k
        out[k::k][:count] += f[k] * g[1:count + 1]
    return out


def sparse_to_int64(sparse: dict, limit: int) -> np.ndarray:
    arr = np.zeros(limit + 1, dtype=np.int64)
    for k, c in sparse.items():
        if k <= limit:
            arr[k] = c
    return arr


def lcm_upto(n: int) -> int:
    """lcm(1, 2, ..., n)."""
    out = 1
    for k in range(2, n + 1):
        out = out * k // math.gcd(out, k)
    return out


def harmonic_weighted_sum(values, n_max: int) -> Fraction:
    """Exact Σ_{n ≤ n_max} values[n] / n as a reduced fraction.

    Sums over the common denominator lcm(1..n_max) so the cost is one
    big-integer gcd at the end instead of one per term.
    """
    denom = lcm_upto(n_max)
    numer = 0
    for n in range(1, n_max + 1):
        numer += values[n] * (denom // n)
    return Fraction(numer, denom)


def compensated_sum(terms) -> float:
    """Floating-point sum with error tracking (exactly rounded)."""
    return math.fsum(terms)


def format_fraction(value) -> str:
    """Render an exact rational as 'num/den' (integers render without '/1')."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_decimal(value, precision: int) -> str:
    """Render an exact rational with `precision` digits after the point.

    Rounds half away from zero using integer arithmetic only, so the text is
    identical on every platform.
    """
    value = Fraction(value)
    sign = '-' if value < 0 else ''
    num, den = abs(value.numerator), value.denominator
    scaled = (2 * num * 10 ** precision + den) // (2 * den)
    whole, frac = divmod(scaled, 10 ** precision)
    if scaled == 0:
        sign = ''
    if precision == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{precision}d}"
