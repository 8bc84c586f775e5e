"""Finite-index sublattices of Z^d in canonical Hermite form.

Rows are generators. A canonical basis H is upper triangular with a
positive diagonal, and each entry above the diagonal is reduced modulo the
diagonal entry of its column:

    H[i][i] >= 1,  H[i][j] = 0 for i > j,  0 <= H[i][j] < H[j][j] for i < j.

Every sublattice has exactly one such basis, so Sublattice equality is
tuple equality. Text format (CLI and files): rows separated by ';',
entries by spaces, e.g. "2 1; 0 3".
"""
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form, invariant_factors

from errors import DomainError
from number_helpers import divisors, ordered_factorisations


def _is_canonical(rows) -> bool:
    d = len(rows)
    if d == 0 or any(len(r) != d for r in rows):
        return False
    for i in range(d):
        if rows[i][i] < 1:
            return False
        for j in range(d):
            if i > j and rows[i][j] != 0:
                return False
            if i < j and not (0 <= rows[i][j] < rows[j][j]):
                return False
    return True


@dataclass(frozen=True, order=True)
class Sublattice:
    """A finite-index subgroup of Z^d, stored as its canonical Hermite basis."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if not _is_canonical(rows):
            raise DomainError(f"not a canonical Hermite basis: {format_sublattice_rows(rows)}")
        object.__setattr__(self, 'rows', rows)

    @classmethod
    def from_generators(cls, generators, d: int = None) -> 'Sublattice':
        """Canonicalize any generating set of a full-rank sublattice."""
        generators = [tuple(int(x) for x in g) for g in generators]
        if d is None:
            if not generators:
                raise DomainError('cannot infer the dimension of an empty generating set')
            d = len(generators[0])
        if any(len(g) != d for g in generators):
            raise DomainError('generators have inconsistent lengths')
        return cls(hermite_rows(generators, d))

    @classmethod
    def identity(cls, d: int) -> 'Sublattice':
        """Z^d itself (index 1)."""
        if d < 1:
            raise DomainError(f"dimension must be >= 1, got {d}")
        return cls(tuple(tuple(int(i == j) for j in range(d)) for i in range(d)))

    @classmethod
    def diagonal(cls, *entries) -> 'Sublattice':
        d = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(d)) for i in range(d)))

    @property
    def d(self) -> int:
        return len(self.rows)

    @property
    def diag(self) -> tuple:
        return tuple(self.rows[i][i] for i in range(self.d))

    @property
    def index(self) -> int:
        return math.prod(self.diag)

    def __str__(self):
        return format_sublattice_rows(self.rows)


def format_sublattice_rows(rows) -> str:
    return '; '.join(' '.join(str(x) for x in r) for r in rows)


def format_sublattice(L: Sublattice) -> str:
    return format_sublattice_rows(L.rows)


def parse_sublattice(text: str, canonicalize: bool = False, d: int = None) -> Sublattice:
    """Parse "2 1; 0 3" into a Sublattice.

    Non-canonical input is rejected unless `canonicalize` is set, in which
    case the rows are treated as generators and brought to Hermite form.
    """
    if text is None or not str(text).strip():
        raise DomainError('empty lattice text')
    try:
        rows = [tuple(int(tok) for tok in part.split()) for part in str(text).split(';') if part.strip()]
    except ValueError:
        raise DomainError(f"lattice entries must be integers: {text!r}") from None
    if not rows:
        raise DomainError(f"no rows in lattice text {text!r}")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise DomainError(f"ragged lattice rows in {text!r}")
    if d is not None and width != d:
        raise DomainError(f"lattice {text!r} has dimension {width}, expected {d}")
    if canonicalize:
        return Sublattice.from_generators(rows, width)
    if len(rows) != width or not _is_canonical(tuple(rows)):
        raise DomainError(f"lattice {text!r} is not in canonical Hermite form (use --canonicalize)")
    return Sublattice(tuple(rows))


def hermite_rows(generators, d: int) -> tuple:
    """Row-style Hermite normal form of a full-rank generating set.

    sympy's Hermite form is column-style: generators are columns and each
    row is reduced to the right of its pivot. Reversing the coordinates on
    the way in and out turns that into the upper-triangular row basis used
    here, H[i][j] = W[d-1-j][d-1-i].
    """
    nonzero = [g for g in generators if any(g)]
    if not nonzero:
        raise DomainError('generators do not span a finite-index sublattice')
    columns = [[ZZ(g[d - 1 - i]) for g in nonzero] for i in range(d)]
    W = hermite_normal_form(DomainMatrix(columns, (d, len(nonzero)), ZZ))
    if W.shape != (d, d):
        raise DomainError('generators do not span a finite-index sublattice')
    w = W.to_list()
    return tuple(tuple(int(w[d - 1 - j][d - 1 - i]) for j in range(d)) for i in range(d))


def index(L: Sublattice) -> int:
    """[Z^d : L], the product of the Hermite diagonal."""
    return L.index


@lru_cache(maxsize=None)
def enumerate_sublattices(d: int, n: int) -> tuple:
    """All sublattices of Z^d with index exactly n, sorted by basis entries.

    A diagonal (h_0, ..., h_{d-1}) with product n admits h_j choices for each
    of the j entries above h_j, so the count is Σ Π_j h_j^j, which is the
    divisor-sum recursion a_n(Z^d) = Σ_{k|n} a_{n/k}(Z^{d-1}) k^{d-1}.
    """
    if d < 1 or n < 1:
        raise DomainError(f"enumerate_sublattices needs d >= 1 and n >= 1, got d={d}, n={n}")
    positions = [(i, j) for j in range(d) for i in range(j)]
    found = []
    for diag in ordered_factorisations(n, d):
        for offsets in itertools.product(*(range(diag[j]) for _, j in positions)):
            rows = [[0] * d for _ in range(d)]
            for k in range(d):
                rows[k][k] = diag[k]
            for (i, j), value in zip(positions, offsets):
                rows[i][j] = value
            found.append(Sublattice(tuple(tuple(r) for r in rows)))
    found.sort()
    return tuple(found)


def sublattices_up_to(d: int, n_max: int):
    """Yield every sublattice of index ≤ n_max, by index then basis."""
    for n in range(1, n_max + 1):
        yield from enumerate_sublattices(d, n)


def coordinates(M: Sublattice, v) -> tuple:
    """Integer coordinates of v in M's basis, or None when v is not in M.

    Forward substitution: row i of M is zero left of column i, so column i of
    v only depends on the coefficients already fixed.
    """
    v = list(v)
    coeffs = []
    for i, row in enumerate(M.rows):
        q, r = divmod(v[i], row[i])
        if r:
            return None
        coeffs.append(q)
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return tuple(coeffs)


def _check_same_dimension(M: Sublattice, L: Sublattice):
    if M.d != L.d:
        raise DomainError(f"dimension mismatch: {M.d} vs {L.d}")


def contains(M: Sublattice, L: Sublattice) -> bool:
    """True iff L ≤ M, i.e. every generator of L is an integer combination of M's rows."""
    _check_same_dimension(M, L)
    if L.index % M.index:
        return False
    return all(coordinates(M, row) is not None for row in L.rows)


@lru_cache(maxsize=None)
def superlattices(L: Sublattice) -> tuple:
    """Every M with L ≤ M ≤ Z^d, both ends included, by index then basis."""
    out = []
    for m in divisors(L.index):
        out.extend(M for M in enumerate_sublattices(L.d, m) if contains(M, L))
    return tuple(out)


@lru_cache(maxsize=None)
def quotient_invariants(M: Sublattice, L: Sublattice) -> tuple:
    """Invariant factors d_1 | d_2 | ... of M/L, factors equal to 1 dropped.

    The relation matrix expresses L's generators in M's basis; its Smith
    normal form diagonal is the quotient's invariant factors.
    """
    _check_same_dimension(M, L)
    relations = [coordinates(M, row) for row in L.rows]
    if any(r is None for r in relations):
        raise DomainError(f"{format_sublattice(L)} is not contained in {format_sublattice(M)}")
    d = M.d
    matrix = DomainMatrix([[ZZ(x) for x in r] for r in relations], (d, d), ZZ)
    factors = tuple(abs(int(f)) for f in invariant_factors(matrix))
    return tuple(f for f in factors if f != 1)


def quotient_type(L: Sublattice) -> tuple:
    """Isomorphism type of Z^d / L as its invariant factors."""
    return quotient_invariants(Sublattice.identity(L.d), L)


def reduce_vector(L: Sublattice, v) -> tuple:
    """Canonical representative of v + L, with 0 <= w[i] < H[i][i] for all i."""
    v = list(v)
    for i, row in enumerate(L.rows):
        q = v[i] // row[i]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return tuple(v)


def box_representatives(L: Sublattice) -> tuple:
    """The transversal of Z^d / L given by the box Π_i [0, H[i][i])."""
    return tuple(itertools.product(*(range(h) for h in L.diag)))
