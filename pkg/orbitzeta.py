#!/usr/bin/env python3
"""Command-line front end: growth tables, Möbius values, orbit counts and checks.

    python orbitzeta.py orbits --d 2 --b 2 --max 3
    python orbitzeta.py figure1 --max 100 --out fig1.csv
    python orbitzeta.py oracle verify --d 2 --b 2 --max 10
    python orbitzeta.py check-all --quick

Results go to stdout or --out; progress notices go to stderr. Exit codes:
0 ok, 1 usage, 2 cap exceeded, 3 consistency failure, 4 I/O failure.
"""
import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import pandas as pd
from dotenv import load_dotenv

import config
from acceptance import run_checks
from algebraic import ledrappier_fix, solenoid_fix, solenoid_lattice
from debug_utils import AuditLog, notice, refresh_from_env
from errors import EXIT_OK, EXIT_USAGE, ConsistencyError, DomainError, exit_code_for
from growth import growth_sequence, mertens_main_term, parse_group
from lattice import enumerate_sublattices, format_sublattice, parse_sublattice, quotient_invariants, quotient_type
from moebius import moebius_closed, moebius_recursive
from number_helpers import format_decimal, format_fraction
from oracle import verify_orbits
from shiftorbits import ShiftSystem, full_shift, orbit_table

load_dotenv()
refresh_from_env()

COMMANDS = ('growth', 'sublattices', 'mobius', 'orbits', 'figure1', 'mertens',
            'oracle-verify', 'ledrappier', 'solenoid', 'check-all')


class UsageErrorParser(argparse.ArgumentParser):
    """argparse parser whose usage errors exit with code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"Error: {message}\n")


@dataclass
class RunConfig:
    command: str
    group: str = 'z:2'
    d: int = None
    b: int = None
    max_n: int = None
    index: int = None
    upper: str = None
    lower: str = None
    lattice: str = None
    family: str = None
    n: int = None
    mode: str = 'exact'
    canonicalize: bool = False
    cap: int = None
    threads: int = None
    quick: bool = False
    out: str = None
    fmt: str = 'csv'
    precision: int = None
    audit_log: str = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise DomainError(f"unknown command {self.command!r}")
        if self.fmt not in ('csv', 'json'):
            raise DomainError(f"unknown format {self.fmt!r} (expected csv or json)")
        self.precision = config.precision() if self.precision is None else config.check_precision(self.precision)
        for name in ('max_n', 'index', 'n', 'cap', 'threads'):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise DomainError(f"--{name.replace('_', '-')} must be >= 1, got {value}")


def _common(parser):
    parser.add_argument('--out', default=None, help='Write results to this file instead of stdout.')
    parser.add_argument('--format', dest='fmt', choices=['csv', 'json'], default=None,
                        help='Output format (default csv; json for ledrappier/solenoid).')
    parser.add_argument('--precision', type=int, default=None,
                        help='Digits after the decimal point in rendered rationals (>= 6; default ORBITZETA_PRECISION).')
    parser.add_argument('--audit-log', dest='audit_log', default=None, help='Write a plain-text audit trail to PATH.')


def build_parser() -> argparse.ArgumentParser:
    parser = UsageErrorParser(description='Closed-orbit counting and subgroup growth for full shifts on Z^d.')
    sub = parser.add_subparsers(dest='command', required=True, parser_class=UsageErrorParser)

    p = sub.add_parser('growth', help='Subgroup growth a_n and partial sums s_n.')
    p.add_argument('--group', default='z:2', help='z:D or heisenberg (default z:2).')
    p.add_argument('--max-n', dest='max_n', type=int, required=True)
    _common(p)

    p = sub.add_parser('sublattices', help='List the sublattices of Z^d with a given index.')
    p.add_argument('--d', type=int, default=2)
    p.add_argument('--index', type=int, required=True)
    _common(p)

    p = sub.add_parser('mobius', help='μ(upper, lower) by the closed form, checked by recursion.')
    p.add_argument('--d', type=int, default=None)
    p.add_argument('--upper', required=True, help='Lattice rows, e.g. "1 0; 0 1".')
    p.add_argument('--lower', required=True, help='Lattice rows, e.g. "2 0; 0 2".')
    p.add_argument('--canonicalize', action='store_true', help='Accept any generating rows and reduce them.')
    p.add_argument('--cap', type=int, default=None, help='Largest quotient for the recursive check.')
    _common(p)

    p = sub.add_parser('orbits', help='Exact orbit table n, a_n, orbits_n, π, M, φ, ψ.')
    p.add_argument('--d', type=int, default=2)
    p.add_argument('--b', type=int, default=2)
    p.add_argument('--max', dest='max_n', type=int, required=True)
    _common(p)

    p = sub.add_parser('figure1', help='φ(N) = π_T(N)/b^N and its main-term comparison ψ(N).')
    p.add_argument('--d', type=int, default=2)
    p.add_argument('--b', type=int, default=2)
    p.add_argument('--max', dest='max_n', type=int, default=100)
    _common(p)

    p = sub.add_parser('mertens', help='Mertens main term Σ a_n/n, with M_T and Δ for Z^d when --b is given.')
    p.add_argument('--group', default='z:2')
    p.add_argument('--max-n', dest='max_n', type=int, required=True)
    p.add_argument('--mode', choices=['exact', 'float'], default='exact')
    p.add_argument('--b', type=int, default=None)
    _common(p)

    p = sub.add_parser('oracle', help='Brute-force oracle commands.')
    oracle_sub = p.add_subparsers(dest='oracle_command', required=True, parser_class=UsageErrorParser)
    v = oracle_sub.add_parser('verify', help='Compare inversion and brute-force orbit counts.')
    v.add_argument('--d', type=int, default=2)
    v.add_argument('--b', type=int, default=2)
    v.add_argument('--max', dest='max_n', type=int, required=True)
    v.add_argument('--threads', type=int, default=None, help='Worker processes (default ORBITZETA_THREADS).')
    _common(v)

    p = sub.add_parser('ledrappier', help="Periodic points of Ledrappier's Z^2-action.")
    p.add_argument('--lattice', required=True)
    p.add_argument('--canonicalize', action='store_true')
    _common(p)

    p = sub.add_parser('solenoid', help='Fixed points of the ×2/shift solenoid families.')
    p.add_argument('--family', choices=['horizontal', 'vertical'], required=True)
    p.add_argument('--n', type=int, required=True)
    _common(p)

    p = sub.add_parser('check-all', help='Run every acceptance check; stops at the first failure.')
    p.add_argument('--quick', action='store_true', help='Smaller horizons.')
    _common(p)
    return parser


def config_from_args(ns) -> RunConfig:
    command = 'oracle-verify' if ns.command == 'oracle' else ns.command
    fields = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__ and v is not None}
    fields['command'] = command
    if ns.fmt is None:
        fields['fmt'] = 'json' if command in ('ledrappier', 'solenoid') else 'csv'
    return RunConfig(**fields)


def _write(text: str, out: str):
    if out:
        with open(out, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def emit_table(rows: list, columns: list, cfg: RunConfig) -> int:
    """Write rows as CSV (header always present) or as a JSON list of records."""
    frame = pd.DataFrame(rows, columns=columns)
    if cfg.fmt == 'json':
        text = json.dumps(frame.to_dict(orient='records'), sort_keys=True, indent=2) + '\n'
    else:
        text = frame.to_csv(index=False, lineterminator='\n')
    _write(text, cfg.out)
    return len(rows)


def emit_record(record: dict, cfg: RunConfig):
    if cfg.fmt == 'csv':
        emit_table([record], list(record), cfg)
        return
    _write(json.dumps(record, sort_keys=True, indent=2) + '\n', cfg.out)


def _invariants_text(factors) -> str:
    return ','.join(str(f) for f in factors) or '1'


def _require_max(cfg: RunConfig, flag: str = '--max'):
    if cfg.max_n is None:
        raise DomainError(f"{flag} is required")
    return cfg.max_n


def cmd_growth(cfg: RunConfig, audit: AuditLog):
    group = parse_group(cfg.group)
    seq = growth_sequence(group, _require_max(cfg, '--max-n'))
    audit.write('growth', group=group.label, horizon=seq.horizon, method=seq.method)
    rows = [(n, seq.a[n - 1], seq.s[n - 1]) for n in range(1, seq.horizon + 1)]
    emit_table(rows, ['n', 'a_n', 's_n'], cfg)
    notice(f"growth: {group.label} up to n={seq.horizon} via {seq.method}")


def cmd_sublattices(cfg: RunConfig, audit: AuditLog):
    lattices = enumerate_sublattices(cfg.d, cfg.index)
    rows = [(format_sublattice(L), L.index, _invariants_text(quotient_type(L))) for L in lattices]
    audit.write('sublattices', d=cfg.d, index=cfg.index, count=len(rows))
    emit_table(rows, ['lattice', 'index', 'invariants'], cfg)
    notice(f"sublattices: {len(rows)} of index {cfg.index} in Z^{cfg.d}")


def cmd_mobius(cfg: RunConfig, audit: AuditLog):
    upper = parse_sublattice(cfg.upper, cfg.canonicalize, cfg.d)
    lower = parse_sublattice(cfg.lower, cfg.canonicalize, cfg.d)
    mu = moebius_closed(upper, lower)
    oracle = moebius_recursive(upper, lower, cfg.cap)
    agrees = mu == oracle
    audit.write('mobius', upper=format_sublattice(upper), lower=format_sublattice(lower), mu=mu, oracle=oracle)
    emit_table(
        [(format_sublattice(upper), format_sublattice(lower),
          _invariants_text(quotient_invariants(upper, lower)), mu, 'true' if agrees else 'false')],
        ['upper', 'lower', 'quotient', 'mu', 'oracle_agrees'],
        cfg,
    )
    if not agrees:
        raise ConsistencyError(f"closed form gives {mu}, recursion gives {oracle}")


def _shift(cfg: RunConfig) -> ShiftSystem:
    return full_shift(2 if cfg.d is None else cfg.d, 2 if cfg.b is None else cfg.b)


def cmd_orbits(cfg: RunConfig, audit: AuditLog):
    table = orbit_table(_shift(cfg), _require_max(cfg))
    k = cfg.precision
    rows = [
        (r.n, r.a_n, str(r.orbits_n), str(r.pi), str(r.mertens.numerator), str(r.mertens.denominator),
         format_decimal(r.mertens, k), format_decimal(r.phi, k), format_decimal(r.psi, k))
        for r in table.rows
    ]
    if not table.is_monotone():
        raise ConsistencyError('orbit table is not monotone')
    audit.write('orbits', d=cfg.d, b=cfg.b, horizon=table.horizon, pi=table.rows[-1].pi)
    emit_table(rows, ['n', 'a_n', 'orbits_n', 'pi', 'mertens_num', 'mertens_den', 'mertens', 'phi', 'psi'], cfg)
    notice(f"orbits: {len(rows)} rows written to {cfg.out or 'stdout'}")


def cmd_figure1(cfg: RunConfig, audit: AuditLog):
    table = orbit_table(_shift(cfg), _require_max(cfg))
    k = cfg.precision
    rows = [
        (r.n, format_decimal(r.phi, k), format_decimal(r.psi, k), format_fraction(r.phi), format_fraction(r.psi))
        for r in table.rows
    ]
    audit.write('figure1', d=cfg.d, b=cfg.b, horizon=table.horizon)
    emit_table(rows, ['N', 'phi', 'psi', 'phi_exact', 'psi_exact'], cfg)
    notice(f"figure1: N={len(rows)} rows written to {cfg.out or 'stdout'}")


def cmd_mertens(cfg: RunConfig, audit: AuditLog):
    group = parse_group(cfg.group)
    N = _require_max(cfg, '--max-n')
    seq = growth_sequence(group, N)
    k = cfg.precision
    if cfg.mode == 'exact':
        final = mertens_main_term(seq, N, 'exact')
        running = Fraction(0)
        main = []
        for n in range(1, N + 1):
            running += Fraction(seq.a[n - 1], n)
            main.append(running)
        if running != final:
            raise ConsistencyError('running Mertens main term disagrees with the common-denominator sum')
        rendered = [format_decimal(v, k) for v in main]
    elif cfg.mode == 'float':
        weights = np.asarray(seq.a, dtype=np.float64) / np.arange(1, N + 1, dtype=np.float64)
        rendered = [f"{v:.{k}f}" for v in np.cumsum(weights)]
    else:
        raise DomainError(f"unknown mode {cfg.mode!r}")
    columns = ['n', 'main_term']
    rows = [[n, rendered[n - 1]] for n in range(1, N + 1)]
    if cfg.b is not None:
        if cfg.mode != 'exact':
            raise DomainError('M_T and Δ are exact; use --mode exact with --b')
        table = orbit_table(ShiftSystem(group, cfg.b), N)
        columns += ['mertens', 'delta']
        for row, r, value in zip(rows, table.rows, main):
            row += [format_decimal(r.mertens, k), format_fraction(r.mertens - value)]
    audit.write('mertens', group=group.label, horizon=N, mode=cfg.mode)
    emit_table(rows, columns, cfg)
    notice(f"mertens: {group.label} up to n={N} ({cfg.mode})")


def cmd_oracle_verify(cfg: RunConfig, audit: AuditLog):
    sys_ = _shift(cfg)
    verified = verify_orbits(sys_, _require_max(cfg), cfg.threads)
    rows = [(format_sublattice(r.lattice), r.lattice.index, r.inversion, r.oracle, 'true' if r.agrees else 'false')
            for r in verified]
    bad = sum(1 for r in verified if not r.agrees)
    audit.write('oracle-verify', d=cfg.d, b=cfg.b, horizon=cfg.max_n, lattices=len(rows), mismatches=bad)
    emit_table(rows, ['lattice', 'index', 'inversion', 'oracle', 'agrees'], cfg)
    notice(f"oracle verify: {len(rows)} lattices, {bad} mismatches")
    if bad:
        raise ConsistencyError(f"{bad} lattices disagree between inversion and brute force")


def cmd_ledrappier(cfg: RunConfig, audit: AuditLog):
    L = parse_sublattice(cfg.lattice, cfg.canonicalize, 2)
    report = ledrappier_fix(L)
    audit.write('ledrappier', lattice=format_sublattice(L), kernel_dim=report.kernel_dim)
    emit_record({'lattice': format_sublattice(L), 'index': L.index,
                 'fix_count': report.fix_count, 'kernel_dim': report.kernel_dim}, cfg)


def cmd_solenoid(cfg: RunConfig, audit: AuditLog):
    L = solenoid_lattice(cfg.family, cfg.n)
    count = solenoid_fix(cfg.family, cfg.n)
    audit.write('solenoid', family=cfg.family, n=cfg.n, fix_count=count)
    emit_record({'lattice': format_sublattice(L), 'index': L.index, 'fix_count': count}, cfg)


def cmd_check_all(cfg: RunConfig, audit: AuditLog):
    lines = []

    def report(result):
        status = 'PASS' if result.ok else 'FAIL'
        line = f"{status} {result.name}: {result.detail}"
        lines.append(line)
        audit.write('check', name=result.name, ok=result.ok, seconds=f"{result.seconds:.2f}")
        notice(f"{result.name}: {status} in {result.seconds:.2f}s")

    results = run_checks(cfg.quick, report)
    _write('\n'.join(lines) + '\n', cfg.out)
    failed = [r for r in results if not r.ok]
    if failed:
        raise ConsistencyError(f"check {failed[0].name} failed: {failed[0].detail}")


HANDLERS = {
    'growth': cmd_growth,
    'sublattices': cmd_sublattices,
    'mobius': cmd_mobius,
    'orbits': cmd_orbits,
    'figure1': cmd_figure1,
    'mertens': cmd_mertens,
    'oracle-verify': cmd_oracle_verify,
    'ledrappier': cmd_ledrappier,
    'solenoid': cmd_solenoid,
    'check-all': cmd_check_all,
}


def run(cfg: RunConfig) -> int:
    """Execute one command; returns the process exit code."""
    with AuditLog(cfg.audit_log) as audit:
        audit.write('start', command=cfg.command)
        try:
            HANDLERS[cfg.command](cfg, audit)
        except Exception as e:
            code = exit_code_for(e)
            audit.write('error', code=code, message=str(e))
            print(f"Error: {e}", file=sys.stderr)
            return code
        audit.write('done', command=cfg.command)
    return EXIT_OK


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except DomainError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


if __name__ == '__main__':
    sys.exit(main())
