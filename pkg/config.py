"""Environment-backed settings.

Every value is read from the environment at call time so a `.env` file
loaded by the entry script (python-dotenv) or a test's monkeypatch is
honoured. CLI flags override these defaults where a flag exists.
"""
import os

from errors import DomainError

DEFAULTS = {
    'ORBITZETA_THREADS': 1,
    'ORBITZETA_MOEBIUS_CAP': 256,
    'ORBITZETA_ORACLE_CAP': 1 << 20,
    'ORBITZETA_EXACT_CAP': 10_000,
    'ORBITZETA_ORBIT_HORIZON': 120,
    'ORBITZETA_PRECISION': 12,
}

MIN_PRECISION = 6


def _positive_int(name: str) -> int:
    raw = os.environ.get(name)
    if raw is None or str(raw).strip() == '':
        return DEFAULTS[name]
    try:
        value = int(str(raw).strip())
    except ValueError:
        raise DomainError(f"{name} must be an integer, got {raw!r}") from None
    if value < 1:
        raise DomainError(f"{name} must be positive, got {value}")
    return value


def thread_count() -> int:
    return _positive_int('ORBITZETA_THREADS')


def moebius_cap() -> int:
    """Largest quotient |M/L| the recursive Möbius oracle will enumerate."""
    return _positive_int('ORBITZETA_MOEBIUS_CAP')


def oracle_cap() -> int:
    """Largest configuration count b^[L] the brute-force oracle will enumerate."""
    return _positive_int('ORBITZETA_ORACLE_CAP')


def exact_cap() -> int:
    """Largest horizon accepted by the exact-rational Mertens main term."""
    return _positive_int('ORBITZETA_EXACT_CAP')


def orbit_horizon() -> int:
    return _positive_int('ORBITZETA_ORBIT_HORIZON')


def precision() -> int:
    value = _positive_int('ORBITZETA_PRECISION')
    return check_precision(value)


def check_precision(value: int) -> int:
    if value < MIN_PRECISION:
        raise DomainError(f"precision must be at least {MIN_PRECISION}, got {value}")
    return value
