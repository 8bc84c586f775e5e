"""Acceptance checks run by `orbitzeta.py check-all`.

Each check returns a short detail string on success and raises
ConsistencyError on failure. `run_checks` stops at the first failing check.
`quick=True` shrinks the horizons so the whole suite runs in seconds.
"""
import math
import time
from dataclasses import dataclass
from fractions import Fraction

from sympy import divisor_sigma, primerange

from algebraic import ledrappier_fix, shape_sensitivity_witness, solenoid_fix
from errors import ConsistencyError, OrbitZetaError
from growth import (a_heisenberg_sieve, a_zd_sieve, check_bounds, fitted_growth_constant,
                    growth_constant, heisenberg, growth_sequence, mertens_main_term,
                    multiplicativity_violation, partial_summation_remainder, zeta_product_coefficients)
from lattice import Sublattice, enumerate_sublattices, superlattices, sublattices_up_to
from moebius import bound_holds, moebius_closed, moebius_recursive
from oracle import verify_orbits
from shiftorbits import error_terms, full_shift, inversion_residual, mertens, orbit_table, pi


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str
    seconds: float


def _require(condition: bool, message: str):
    if not condition:
        raise ConsistencyError(message)


def check_moebius(quick: bool = False) -> str:
    limit = 16 if quick else 36
    pairs = 0
    for L in sublattices_up_to(2, limit):
        for M in superlattices(L):
            closed = moebius_closed(M, L)
            recursive = moebius_recursive(M, L)
            _require(closed == recursive, f"μ({M}, {L}): closed form {closed}, recursion {recursive}")
            _require(bound_holds(closed, L.index // M.index), f"|μ({M}, {L})| exceeds its bound")
            pairs += 1
    return f"{pairs} intervals up to index {limit}"


def check_orbit_oracle(quick: bool = False) -> str:
    rows = 0
    for b, n_max in ((2, 6), (3, 5)) if quick else ((2, 10), (3, 8)):
        sys = full_shift(2, b)
        verified = verify_orbits(sys, n_max)
        bad = [r for r in verified if not r.agrees]
        _require(not bad, f"b={b}: {len(bad)} lattices disagree, first {bad[0].lattice if bad else ''}")
        pi_oracle = sum(r.oracle for r in verified)
        mertens_oracle = sum((Fraction(r.oracle, b ** r.lattice.index) for r in verified), Fraction(0))
        _require(pi_oracle == pi(sys, n_max), f"b={b}: π_T({n_max}) disagrees with the oracle")
        _require(mertens_oracle == mertens(sys, n_max), f"b={b}: M_T({n_max}) disagrees with the oracle")
        rows += len(verified)
    return f"{rows} lattices agree"


def check_anchors(quick: bool = False) -> str:
    sys = full_shift(2, 2)
    table = orbit_table(sys, 4)
    expected_pi = {1: 2, 2: 5, 3: 13}
    for n, value in expected_pi.items():
        _require(table.row(n).pi == value, f"π_T({n}) = {table.row(n).pi}, expected {value}")
    for n, value in {2: Fraction(7, 4), 3: Fraction(11, 4), 4: Fraction(4)}.items():
        _require(table.row(n).mertens == value, f"M_T({n}) = {table.row(n).mertens}, expected {value}")
    delta = error_terms(sys, 2).delta
    _require(delta == Fraction(-3, 4), f"Δ_2 = {delta}, expected -3/4")
    brute = sum(r.oracle for r in verify_orbits(sys, 3))
    _require(brute == 13, f"brute-force π_T(3) = {brute}, expected 13")
    return 'π_T(1..3) = 2, 5, 13; M_T(2..4) = 7/4, 11/4, 4; Δ_2 = -3/4'


def check_inversion(quick: bool = False) -> str:
    limit = 12 if quick else 20
    count = 0
    for b in (2, 3):
        sys = full_shift(2, b)
        for L in sublattices_up_to(2, limit):
            residual = inversion_residual(sys, L)
            _require(residual == 0, f"b={b}, L={L}: Σ [L'] O_T(L') - b^[L] = {residual}")
            count += 1
    return f"{count} lattice/alphabet pairs up to index {limit}"


def check_figure(quick: bool = False) -> str:
    n_max = 60 if quick else 100
    rows = orbit_table(full_shift(2, 2), n_max).rows
    for r in rows:
        if r.n >= 10:
            _require(1 <= r.phi <= Fraction(9, 2), f"φ({r.n}) = {float(r.phi):.6f} outside [1, 4.5]")
            _require(1 <= r.psi <= Fraction(9, 2), f"ψ({r.n}) = {float(r.psi):.6f} outside [1, 4.5]")
        if r.n >= 40:
            _require(abs(r.phi - r.psi) < Fraction(1, 1000), f"|φ({r.n}) - ψ({r.n})| >= 1e-3")
    last = rows[-1]
    return f"φ({last.n}) = {float(last.phi):.6f}, ψ({last.n}) = {float(last.psi):.6f}"


def check_growth(quick: bool = False) -> str:
    enum_limit = 30 if quick else 60
    limit = 200 if quick else 1000
    seq = a_zd_sieve(2, enum_limit)
    for n in range(1, enum_limit + 1):
        _require(seq.a_n(n) == int(divisor_sigma(n)), f"a_{n}(Z^2) = {seq.a_n(n)} is not σ({n})")
        _require(seq.a_n(n) == len(enumerate_sublattices(2, n)), f"a_{n}(Z^2) disagrees with enumeration")
    for d in range(1, 5):
        seq = a_zd_sieve(d, limit)
        direct = zeta_product_coefficients(d, limit)
        _require(list(seq.a) == list(direct[1:limit + 1]), f"Z^{d}: recursion and zeta product disagree")
        report = check_bounds(seq)
        _require(report.ok, f"Z^{d}: bound violated at {report.violation}")
    report = check_bounds(growth_sequence(heisenberg(), limit))
    _require(report.ok, f"Heisenberg: bound violated at {report.violation}")
    return f"Z^1..Z^4 and Heisenberg consistent up to n = {limit}"


def check_heisenberg(quick: bool = False) -> str:
    horizon = 200_000 if quick else 1_000_000
    seq = a_heisenberg_sieve(horizon)
    _require(seq.a_n(1) == 1 and seq.a_n(2) == 3, 'a_1, a_2 of the Heisenberg group are not 1, 3')
    for p in primerange(2, 100):
        _require(seq.a_n(p) == 1 + p, f"a_{p} = {seq.a_n(p)}, expected {1 + p}")
    violation = multiplicativity_violation(seq, 10 ** 4)
    _require(violation is None, f"a_mn != a_m a_n at {violation}")
    observed = fitted_growth_constant(seq)
    target = growth_constant(heisenberg())
    _require(target / 2 <= observed <= 2 * target, f"s_N/(N^2 ln N) = {observed:.4f}, limit {target:.4f}")
    return f"s_N/(N^2 ln N) = {observed:.4f} at N = {horizon} (limit {target:.4f})"


def check_mertens(quick: bool = False) -> str:
    N = 10 ** 3 if quick else 10 ** 4
    seq = a_zd_sieve(2, N)
    main = mertens_main_term(seq, N, 'exact')
    double_sum = sum((Fraction(N // k, k) for k in range(1, N + 1)), Fraction(0))
    _require(main == double_sum, 'Σ σ(n)/n disagrees with Σ_k ⌊N/k⌋/k')
    ratio = float(main) / N
    zeta2 = math.pi ** 2 / 6
    tolerance = 0.01 if quick else 0.005
    _require(abs(ratio / zeta2 - 1) < tolerance, f"Σ σ(n)/n / N = {ratio:.6f}, ζ(2) = {zeta2:.6f}")

    sys = full_shift(2, 2)
    horizon = 60
    table = orbit_table(sys, horizon)
    seq = a_zd_sieve(2, horizon)
    running = Fraction(0)
    deltas = {}
    for r in table.rows:
        running += Fraction(seq.a_n(r.n), r.n)
        deltas[r.n] = r.mertens - running
        _require(abs(deltas[r.n]) <= 3, f"|Δ_{r.n}| = {float(abs(deltas[r.n])):.4f} > 3")
    for n, value in {2: Fraction(-3, 4), 3: Fraction(-13, 12), 4: Fraction(-19, 12)}.items():
        _require(deltas[n] == value, f"Δ_{n} = {deltas[n]}, expected {value}")
    _require(error_terms(sys, horizon).delta == deltas[horizon], f"Δ_{horizon} differs between paths")
    _require(abs(deltas[60] - deltas[40]) < Fraction(1, 1000), '|Δ_60 - Δ_40| >= 1e-3')
    return f"ratio/ζ(2) = {ratio / zeta2:.6f}; Δ_60 = {float(deltas[60]):.6f}"


def check_partial_summation(quick: bool = False) -> str:
    for e in range(1, 5):
        for b in (2, 3):
            for N in range(1, 61):
                R = partial_summation_remainder(e, b, N)
                _require(-8 * N ** (e - 1) * b ** N <= R < 0,
                         f"remainder out of range for e={e}, b={b}, N={N}")
    return 'e = 1..4, b = 2, 3, N ≤ 60'


def check_algebraic(quick: bool = False) -> str:
    k_max = 4 if quick else 6
    for k in range(1, k_max + 1):
        report = ledrappier_fix(Sublattice.diagonal(2 ** k, 2 ** k))
        _require(report.fix_count == 1, f"Ledrappier diag(2^{k}, 2^{k}) has {report.fix_count} fixed points")
    previous = 0
    for k in range(2, 6):
        count = ledrappier_fix(Sublattice.diagonal(2 ** k - 1, 2 ** k - 1)).fix_count
        _require(count > previous, f"Ledrappier counts stop growing at diag({2 ** k - 1}, {2 ** k - 1})")
        previous = count
    for n in range(1, 21):
        _require(solenoid_fix('horizontal', n) == 2 ** n - 1, f"horizontal solenoid n={n}")
        _require(solenoid_fix('vertical', n) == 1, f"vertical solenoid n={n}")
    witness = shape_sensitivity_witness()
    _require(witness.first.L.index == witness.second.L.index
             and witness.first.fix_count != witness.second.fix_count, 'shape-sensitivity witness failed')
    return f"Ledrappier diag(31, 31) has {previous} fixed points"


CHECKS = (
    ('moebius-oracle', check_moebius),
    ('orbit-oracle', check_orbit_oracle),
    ('exact-anchors', check_anchors),
    ('inversion', check_inversion),
    ('figure1', check_figure),
    ('growth', check_growth),
    ('heisenberg', check_heisenberg),
    ('mertens', check_mertens),
    ('partial-summation', check_partial_summation),
    ('algebraic', check_algebraic),
)


def run_checks(quick: bool = False, on_result=None) -> list:
    """Run CHECKS in order; stop after the first failure."""
    results = []
    for name, check in CHECKS:
        start = time.perf_counter()
        try:
            detail = check(quick)
            ok = True
        except OrbitZetaError as e:
            detail = str(e)
            ok = False
        result = CheckResult(name, ok, detail, time.perf_counter() - start)
        results.append(result)
        if on_result is not None:
            on_result(result)
        if not ok:
            break
    return results
