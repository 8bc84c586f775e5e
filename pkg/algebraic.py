"""Periodic-point counts for two algebraic Z^2-actions.

Ledrappier's action lives on binary configurations x with
x(h) + x(h + e1) + x(h + e2) = 0 (mod 2) everywhere. Its L-periodic points
are the kernel of 1 + U + V on functions Z^2/L -> GF(2), so the count is
2^{dim ker}. The count depends on the shape of L and not only on its index;
the ×2/shift solenoid families show the same thing in closed form.
"""
from dataclasses import dataclass

from errors import DomainError, UnsupportedOperationError
from lattice import Sublattice, box_representatives, reduce_vector

HORIZONTAL = 'horizontal'
VERTICAL = 'vertical'
FAMILIES = (HORIZONTAL, VERTICAL)


@dataclass(frozen=True)
class LedrappierFixReport:
    L: Sublattice
    kernel_dim: int
    fix_count: int


def gf2_rank(rows: list) -> int:
    """Rank over GF(2) of rows given as int bitsets.

    Keeps one basis row per lowest set bit and reduces each incoming row
    against it until it vanishes or claims a new lowest bit.
    """
    basis = {}
    for row in rows:
        while row:
            low = row & -row
            pivot = basis.get(low)
            if pivot is None:
                basis[low] = row
                break
            row ^= pivot
    return len(basis)


def ledrappier_operator(L: Sublattice) -> list:
    """Rows of 1 + U + V on the torus Z^2/L, one bitset per cell."""
    if L.d != 2:
        raise DomainError(f"Ledrappier's action is a Z^2-action; got a lattice of dimension {L.d}")
    reps = box_representatives(L)
    pos = {rep: i for i, rep in enumerate(reps)}
    rows = []
    for h in reps:
        right = pos[reduce_vector(L, (h[0] + 1, h[1]))]
        up = pos[reduce_vector(L, (h[0], h[1] + 1))]
        # cells may coincide on thin tori; XOR cancels them in pairs
        rows.append((1 << pos[h]) ^ (1 << right) ^ (1 << up))
    return rows


def ledrappier_fix(L: Sublattice) -> LedrappierFixReport:
    """F_T(L) for Ledrappier's action by elimination over GF(2)."""
    rows = ledrappier_operator(L)
    kernel_dim = L.index - gf2_rank(rows)
    return LedrappierFixReport(L, kernel_dim, 2 ** kernel_dim)


def solenoid_lattice(family: str, n: int) -> Sublattice:
    if family not in FAMILIES:
        raise DomainError(f"unknown solenoid family {family!r} (expected horizontal or vertical)")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return Sublattice.diagonal(n, 1) if family == HORIZONTAL else Sublattice.diagonal(1, n)


def solenoid_fix(family: str, n: int) -> int:
    """Fixed points of the ×2/shift solenoid on (n,0)Z⊕(0,1)Z or (1,0)Z⊕(0,n)Z."""
    solenoid_lattice(family, n)
    return 2 ** n - 1 if family == HORIZONTAL else 1


def solenoid_fix_lattice(L: Sublattice) -> int:
    """solenoid_fix for a lattice given directly; only the two diagonal families are known."""
    if L.d != 2:
        raise DomainError(f"the solenoid action is a Z^2-action; got a lattice of dimension {L.d}")
    h, v = L.diag
    if L.rows[0][1] == 0:
        if v == 1:
            return solenoid_fix(HORIZONTAL, h)
        if h == 1:
            return solenoid_fix(VERTICAL, v)
    raise UnsupportedOperationError(
        f"no fixed-point formula for the solenoid on {L}; only diag(n, 1) and diag(1, n) are supported"
    )


@dataclass(frozen=True)
class ShapeWitness:
    """Two lattices of equal index whose Ledrappier counts differ."""

    first: LedrappierFixReport
    second: LedrappierFixReport


def shape_sensitivity_witness() -> ShapeWitness:
    first = ledrappier_fix(Sublattice.diagonal(3, 3))
    second = ledrappier_fix(Sublattice.diagonal(9, 1))
    return ShapeWitness(first, second)
