"""Exact closed-orbit statistics of the full G-shift.

For a sublattice L of Z^d and alphabet size b:

    F_T(L) = b^[L]
    O_T(L) = (1/[L]) Σ_{L' ≥ L} μ(L', L) F_T(L')
    π_T(N) = Σ_{[L] ≤ N} O_T(L)
    M_T(N) = Σ_{[L] ≤ N} O_T(L) / b^[L]

O_T(L) only depends on the isomorphism type of Z^d / L, so the
horizon-wide sums group lattices by quotient type (`lattice_types`) and
evaluate one representative per type; the per-lattice path is kept as
`strategy='lattices'` and the tests hold the two together.

Everything here is exact (ints and Fractions); decimals are produced only
when rows are rendered for output.
"""
import math
from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import config
from debug_utils import is_debug_enabled, write_debug
from errors import CapExceededError, ConsistencyError, DomainError, UnsupportedOperationError
from growth import GroupDescriptor, a_zd_sieve, free_abelian, growth_sequence, mertens_main_term
from lattice import Sublattice, enumerate_sublattices, quotient_type, superlattices, sublattices_up_to
from moebius import moebius_closed
from number_helpers import classical_mobius, divisors


@dataclass(frozen=True)
class ShiftSystem:
    """The full shift of `group` on an alphabet of b symbols (entropy ln b)."""

    group: GroupDescriptor
    b: int

    def __post_init__(self):
        if not isinstance(self.b, int) or self.b < 2:
            raise DomainError(f"alphabet size must be an integer >= 2, got {self.b!r}")

    @property
    def entropy(self) -> float:
        return math.log(self.b)

    @property
    def d(self) -> int:
        return self.group.dimension

    def require_orbits(self):
        if not self.group.is_free_abelian:
            raise UnsupportedOperationError(
                f"orbit-level statistics need lattice enumeration; {self.group.label} "
                f"only exposes the Mertens main term"
            )


def full_shift(d: int, b: int) -> ShiftSystem:
    return ShiftSystem(free_abelian(d), b)


def _check_lattice(sys: ShiftSystem, L: Sublattice):
    sys.require_orbits()
    if L.d != sys.d:
        raise DomainError(f"lattice of dimension {L.d} for a Z^{sys.d} shift")


def _check_horizon(N: int):
    if N < 1:
        raise DomainError(f"horizon must be >= 1, got {N}")
    cap = config.orbit_horizon()
    if N > cap:
        raise CapExceededError('exact orbit horizon', N, cap)


def fix_count(sys: ShiftSystem, L: Sublattice) -> int:
    """F_T(L) = b^[L], the number of L-periodic configurations."""
    _check_lattice(sys, L)
    return sys.b ** L.index


@lru_cache(maxsize=None)
def _inversion_sum(sys: ShiftSystem, L: Sublattice) -> int:
    return sum(moebius_closed(M, L) * sys.b ** M.index for M in superlattices(L))


@lru_cache(maxsize=None)
def orbit_count(sys: ShiftSystem, L: Sublattice) -> int:
    """O_T(L), the number of orbits whose stabilizer is exactly L."""
    _check_lattice(sys, L)
    total = _inversion_sum(sys, L)
    count, remainder = divmod(total, L.index)
    if remainder or count < 0:
        raise ConsistencyError(f"Möbius inversion for {L} gave {total}/{L.index}")
    return count


def superlattice_excess(sys: ShiftSystem, L: Sublattice) -> int:
    """Σ_{L' > L} μ(L', L) b^[L'], the proper-superlattice part of the inversion sum."""
    _check_lattice(sys, L)
    return _inversion_sum(sys, L) - sys.b ** L.index


def inversion_residual(sys: ShiftSystem, L: Sublattice) -> int:
    """Σ_{L' ≥ L} [L'] O_T(L') - b^[L]; zero when the counts are consistent."""
    _check_lattice(sys, L)
    return sum(M.index * orbit_count(sys, M) for M in superlattices(L)) - sys.b ** L.index


@dataclass(frozen=True)
class LatticeType:
    """The index-n sublattices with one quotient isomorphism type."""

    invariants: tuple
    representative: Sublattice
    count: int


@lru_cache(maxsize=None)
def lattice_types(d: int, n: int) -> tuple:
    """Group the index-n sublattices of Z^d by the invariant factors of Z^d/L."""
    groups = OrderedDict()
    for L in enumerate_sublattices(d, n):
        key = quotient_type(L)
        if key in groups:
            rep, count = groups[key]
            groups[key] = (rep, count + 1)
        else:
            groups[key] = (L, 1)
    return tuple(LatticeType(k, rep, c) for k, (rep, c) in sorted(groups.items()))


def orbits_at_index(sys: ShiftSystem, n: int, strategy: str = 'types') -> int:
    """Σ_{[L]=n} O_T(L)."""
    sys.require_orbits()
    if strategy == 'types':
        return sum(t.count * orbit_count(sys, t.representative) for t in lattice_types(sys.d, n))
    if strategy == 'lattices':
        return sum(orbit_count(sys, L) for L in enumerate_sublattices(sys.d, n))
    raise DomainError(f"unknown strategy {strategy!r} (expected types or lattices)")


def pi(sys: ShiftSystem, N: int, strategy: str = 'types') -> int:
    """π_T(N), the number of closed orbits of size at most N."""
    sys.require_orbits()
    _check_horizon(N)
    return sum(orbits_at_index(sys, n, strategy) for n in range(1, N + 1))


def mertens(sys: ShiftSystem, N: int, strategy: str = 'types') -> Fraction:
    """M_T(N) = Σ_{|τ| ≤ N} b^{-|τ|} as a reduced fraction."""
    sys.require_orbits()
    _check_horizon(N)
    return sum((Fraction(orbits_at_index(sys, n, strategy), sys.b ** n) for n in range(1, N + 1)), Fraction(0))


def mertens_main(sys: ShiftSystem, N: int, mode: str = 'exact'):
    """Σ_{n≤N} a_n(G)/n, the part of M_T(N) every group (Heisenberg included) exposes."""
    return mertens_main_term(growth_sequence(sys.group, N), N, mode)


@dataclass(frozen=True)
class ErrorTerms:
    """Σ_N / b^N and Δ_N from the π_T and M_T decompositions."""

    sigma_over_bN: Fraction
    delta: Fraction


def error_terms(sys: ShiftSystem, N: int) -> ErrorTerms:
    """Compute Σ_N/b^N and Δ_N from lattice and Möbius data, then cross-check.

    Σ_N = Σ_{[L]≤N} (1/[L]) Σ_{L'>L} μ(L',L) b^[L'] and
    Δ_N = Σ_{n≤N} (1/(n b^n)) Σ_{[L]=n} Σ_{L'>L} μ(L',L) b^[L'].
    Raises ConsistencyError unless π_T(N) = Σ a_n b^n / n + Σ_N and
    M_T(N) = Σ a_n / n + Δ_N hold exactly.
    """
    sys.require_orbits()
    _check_horizon(N)
    b = sys.b
    sigma = Fraction(0)
    delta = Fraction(0)
    for n in range(1, N + 1):
        excess = sum(t.count * superlattice_excess(sys, t.representative) for t in lattice_types(sys.d, n))
        sigma += Fraction(excess, n)
        delta += Fraction(excess, n * b ** n)
    seq = a_zd_sieve(sys.d, N)
    main_pi = sum((Fraction(seq.a[n - 1] * b ** n, n) for n in range(1, N + 1)), Fraction(0))
    main_mertens = sum((Fraction(seq.a[n - 1], n) for n in range(1, N + 1)), Fraction(0))
    if pi(sys, N) != main_pi + sigma:
        raise ConsistencyError(f"π_T({N}) does not match its main term plus Σ_N")
    if mertens(sys, N) != main_mertens + delta:
        raise ConsistencyError(f"M_T({N}) does not match its main term plus Δ_N")
    return ErrorTerms(sigma / b ** N, delta)


@dataclass(frozen=True)
class OrbitRow:
    n: int
    a_n: int
    orbits_n: int
    pi: int
    mertens: Fraction
    phi: Fraction
    psi: Fraction


@dataclass(frozen=True)
class OrbitTable:
    """Per-index exact orbit statistics for n = 1..N."""

    system: ShiftSystem
    horizon: int
    rows: tuple

    def row(self, n: int) -> OrbitRow:
        if not 1 <= n <= self.horizon:
            raise DomainError(f"n={n} outside 1..{self.horizon}")
        return self.rows[n - 1]

    def is_monotone(self) -> bool:
        return all(
            r0.pi <= r1.pi and r0.mertens <= r1.mertens
            for r0, r1 in zip(self.rows, self.rows[1:])
        ) and all(r.orbits_n >= 0 for r in self.rows)


def orbit_table(sys: ShiftSystem, N: int) -> OrbitTable:
    """Build the OrbitTable for n = 1..N.

    φ(n) = π_T(n)/b^n and ψ(n) = (1/b^n) Σ_{k≤n} a_k b^k / k, with a_k from
    the growth sieve; the lattice-type counts must agree with it.
    """
    sys.require_orbits()
    _check_horizon(N)
    b = sys.b
    seq = a_zd_sieve(sys.d, N)
    rows = []
    running_pi = 0
    running_mertens = Fraction(0)
    weighted = Fraction(0)
    for n in range(1, N + 1):
        types = lattice_types(sys.d, n)
        a_n = seq.a[n - 1]
        if sum(t.count for t in types) != a_n:
            raise ConsistencyError(f"lattice enumeration at index {n} disagrees with a_n = {a_n}")
        orbits_n = sum(t.count * orbit_count(sys, t.representative) for t in types)
        running_pi += orbits_n
        running_mertens += Fraction(orbits_n, b ** n)
        weighted += Fraction(a_n * b ** n, n)
        rows.append(OrbitRow(
            n=n,
            a_n=a_n,
            orbits_n=orbits_n,
            pi=running_pi,
            mertens=running_mertens,
            phi=Fraction(running_pi, b ** n),
            psi=weighted / b ** n,
        ))
    if is_debug_enabled():
        write_debug(
            f"lattice_types_d{sys.d}_b{b}_N{N}.txt",
            [
                (n, ' x '.join(map(str, t.invariants)) or 'trivial', t.count, t.representative,
                 orbit_count(sys, t.representative))
                for n in range(1, N + 1) for t in lattice_types(sys.d, n)
            ],
        )
    return OrbitTable(sys, N, tuple(rows))


@dataclass(frozen=True)
class FigureRow:
    n: int
    phi: Fraction
    psi: Fraction


def figure_series(sys: ShiftSystem, N: int) -> tuple:
    """Rows (n, φ(n), ψ(n)) for n = 1..N; d = 2, b = 2 is the canonical figure."""
    return tuple(FigureRow(r.n, r.phi, r.psi) for r in orbit_table(sys, N).rows)


def envelope_ratio(sys: ShiftSystem, N: int) -> float:
    """φ(N) / (N^{d-2} (ln N)^{d-1}), bounded above by the Z^d orbit-growth theorem."""
    if N < 2:
        raise DomainError(f"envelope_ratio needs N >= 2, got {N}")
    phi = orbit_table(sys, N).row(N).phi
    return float(phi) / (N ** (sys.d - 2) * math.log(N) ** (sys.d - 1))


def aperiodic_necklaces(b: int, n: int) -> int:
    """(1/n) Σ_{k|n} μ(n/k) b^k: closed orbits of length exactly n of the b-symbol shift."""
    total = sum(classical_mobius(n // k) * b ** k for k in divisors(n))
    return total // n


def orbits_by_lattice(sys: ShiftSystem, n_max: int):
    """Yield (L, O_T(L)) for every lattice of index ≤ n_max."""
    for L in sublattices_up_to(sys.d, n_max):
        yield L, orbit_count(sys, L)
