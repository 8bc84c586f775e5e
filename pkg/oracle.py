"""Brute-force orbit counts for the full Z^d-shift.

Enumerates every L-periodic configuration on the torus Z^d/L, finds its
exact stabilizer by testing the torus translations, and recounts orbits
directly. Nothing here goes through the Möbius function; `verify_orbits`
is the only place the inversion counts are read, for comparison.
"""
import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import config
from debug_utils import is_debug_enabled, write_debug
from errors import CapExceededError, ConsistencyError, DomainError
from lattice import Sublattice, box_representatives, enumerate_sublattices, reduce_vector, sublattices_up_to


@dataclass(frozen=True)
class PeriodicConfiguration:
    """Symbols on the torus Z^d/L, listed in `coset_representatives(L)` order."""

    L: Sublattice
    values: tuple
    b: int = None

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        if len(values) != self.L.index:
            raise DomainError(f"configuration has {len(values)} cells, torus {self.L} has {self.L.index}")
        if self.b is not None and any(not 0 <= v < self.b for v in values):
            raise DomainError(f"symbols must lie in [0, {self.b})")
        object.__setattr__(self, 'values', values)


def coset_representatives(L: Sublattice) -> list:
    """The box transversal Π_i [0, H[i][i]); each entry is already reduced mod L."""
    return list(box_representatives(L))


@lru_cache(maxsize=None)
def _positions(L: Sublattice) -> dict:
    return {rep: i for i, rep in enumerate(box_representatives(L))}


@lru_cache(maxsize=None)
def translation_permutations(L: Sublattice) -> tuple:
    """perm[g][i] = position of rep_i + rep_g, so (T_g x)[i] = x[perm[g][i]].

    Entry 0 is the identity (rep_0 is the zero vector).
    """
    reps = box_representatives(L)
    pos = _positions(L)
    return tuple(
        tuple(pos[reduce_vector(L, [a + c for a, c in zip(h, g)])] for h in reps)
        for g in reps
    )


def _fixing_mask(values: tuple, perms: tuple) -> int:
    mask = 0
    for k, perm in enumerate(perms):
        if all(values[p] == v for p, v in zip(perm, values)):
            mask |= 1 << k
    return mask


@lru_cache(maxsize=None)
def _mask_lattice(L: Sublattice, mask: int) -> Sublattice:
    reps = box_representatives(L)
    fixing = [reps[k] for k in range(len(reps)) if mask >> k & 1]
    return Sublattice.from_generators(list(L.rows) + fixing, L.d)


def stabilizer(cfg: PeriodicConfiguration) -> Sublattice:
    """The canonical sublattice of translations fixing cfg; always contains cfg.L."""
    return _mask_lattice(cfg.L, _fixing_mask(cfg.values, translation_permutations(cfg.L)))


def translate(cfg: PeriodicConfiguration, g) -> PeriodicConfiguration:
    """T_g cfg on the same torus."""
    L = cfg.L
    k = _positions(L)[reduce_vector(L, g)]
    perm = translation_permutations(L)[k]
    return PeriodicConfiguration(L, tuple(cfg.values[p] for p in perm), cfg.b)


def _check(sys, L: Sublattice):
    sys.require_orbits()
    if L.d != sys.d:
        raise DomainError(f"lattice of dimension {L.d} for a Z^{sys.d} shift")
    cap = config.oracle_cap()
    size = sys.b ** L.index
    if size > cap:
        raise CapExceededError('oracle configurations', size, cap)


def configurations(sys, L: Sublattice):
    """Every L-periodic configuration, by mixed-radix counter over the transversal."""
    _check(sys, L)
    for values in itertools.product(range(sys.b), repeat=L.index):
        yield PeriodicConfiguration(L, values, sys.b)


def orbit_count_oracle(sys, L: Sublattice) -> int:
    """(1/[L]) #{cfg : stabilizer(cfg) = L}, counted directly."""
    _check(sys, L)
    perms = translation_permutations(L)[1:]
    exact = 0
    for values in itertools.product(range(sys.b), repeat=L.index):
        if not any(all(values[p] == v for p, v in zip(perm, values)) for perm in perms):
            exact += 1
    count, remainder = divmod(exact, L.index)
    if remainder:
        raise ConsistencyError(f"{exact} aperiodic configurations on {L} do not split into orbits of size {L.index}")
    return count


def stabilizer_census(sys, L: Sublattice) -> Counter:
    """Number of L-periodic configurations per exact stabilizer.

    The counts sum to b^[L], and the entry for M equals [M] times the number
    of orbits with stabilizer M.
    """
    _check(sys, L)
    perms = translation_permutations(L)
    masks = Counter(_fixing_mask(values, perms) for values in itertools.product(range(sys.b), repeat=L.index))
    census = Counter()
    for mask, n in masks.items():
        census[_mask_lattice(L, mask)] += n
    if is_debug_enabled():
        write_debug(f"census_{'_'.join(map(str, L.diag))}_b{sys.b}.txt",
                    [(M, n) for M, n in sorted(census.items())])
    return census


def pi_oracle(sys, N: int) -> int:
    """π_T(N) as a sum of brute-force orbit counts."""
    _check_horizon(sys, N)
    return sum(orbit_count_oracle(sys, L) for L in sublattices_up_to(sys.d, N))


def mertens_oracle(sys, N: int) -> Fraction:
    """M_T(N) as a sum of brute-force orbit counts weighted by b^-[L]."""
    _check_horizon(sys, N)
    return sum(
        (Fraction(orbit_count_oracle(sys, L), sys.b ** L.index) for L in sublattices_up_to(sys.d, N)),
        Fraction(0),
    )


def _check_horizon(sys, N: int):
    sys.require_orbits()
    if N < 1:
        raise DomainError(f"horizon must be >= 1, got {N}")
    cap = config.oracle_cap()
    if sys.b ** N > cap:
        raise CapExceededError('oracle configurations', sys.b ** N, cap)


@dataclass(frozen=True)
class VerifyRow:
    lattice: Sublattice
    inversion: int
    oracle: int

    @property
    def agrees(self) -> bool:
        return self.inversion == self.oracle


def _oracle_worker(args):
    sys, L = args
    return orbit_count_oracle(sys, L)


def verify_orbits(sys, N: int, threads: int = None) -> list:
    """Compare inversion and brute-force orbit counts on every lattice of index ≤ N.

    With more than one worker the lattices are spread over a process pool;
    rows always come back in enumeration order.
    """
    from shiftorbits import orbit_count

    _check_horizon(sys, N)
    threads = config.thread_count() if threads is None else threads
    lattices = [L for n in range(1, N + 1) for L in enumerate_sublattices(sys.d, n)]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            counts = list(ex.map(_oracle_worker, [(sys, L) for L in lattices]))
    else:
        counts = [orbit_count_oracle(sys, L) for L in lattices]
    return [VerifyRow(L, orbit_count(sys, L), c) for L, c in zip(lattices, counts)]
