import os
import sys
import threading

DEBUG_DIR = os.environ.get('ORBITZETA_DEBUG_DIR', 'debug')

# Global debug toggle: disabled by default unless explicitly enabled via env
# Set ORBITZETA_DEBUG to one of: 1, true, yes, on (case-insensitive) to enable
_DEBUG_ENABLED = str(os.environ.get('ORBITZETA_DEBUG', '')).lower() in {'1', 'true', 'yes', 'on'}

# Snapshot names are allocated under a lock; orbit tables may be built from
# worker threads in callers that batch several systems.
_lock = threading.Lock()
_mapping = {}  # base_name -> sequence-prefixed name
_counter = 0


def refresh_from_env():
    """Re-read ORBITZETA_DEBUG and ORBITZETA_DEBUG_DIR (after load_dotenv)."""
    global DEBUG_DIR, _DEBUG_ENABLED
    DEBUG_DIR = os.environ.get('ORBITZETA_DEBUG_DIR', 'debug')
    _DEBUG_ENABLED = str(os.environ.get('ORBITZETA_DEBUG', '')).lower() in {'1', 'true', 'yes', 'on'}


def set_debug_enabled(enabled: bool):
    global _DEBUG_ENABLED
    _DEBUG_ENABLED = bool(enabled)


def is_debug_enabled() -> bool:
    return bool(_DEBUG_ENABLED)


def notice(message: str):
    """Print a bracketed one-line progress notice to stderr."""
    print(f"[{message}]", file=sys.stderr)


def _ensure_debug_dir():
    if not os.path.exists(DEBUG_DIR):
        try:
            os.makedirs(DEBUG_DIR, exist_ok=True)
        except Exception:
            pass


def _alloc_canonical(base_name: str) -> str:
    """Allocate or return the sequence-prefixed filename for base_name.

    Canonical form: zero-padded 3-digit sequence + '_' + base_name,
    e.g. '001_lattice_types_d2.txt'. A name written twice in one run keeps
    its first number so later snapshots overwrite the earlier one.
    """
    global _counter
    with _lock:
        base = os.path.basename(base_name)
        if base in _mapping:
            return _mapping[base]
        _counter += 1
        canonical = f"{_counter:03d}_{base}"
        _mapping[base] = canonical
        return canonical


def write_debug(name: str, content, encoding='utf-8'):
    """Write a debug snapshot under the debug directory.

    `content` is either a string or an iterable of rows; rows that are not
    strings are joined with tabs. Does nothing unless ORBITZETA_DEBUG is on.
    """
    if not _DEBUG_ENABLED:
        return
    _ensure_debug_dir()
    try:
        path = os.path.join(DEBUG_DIR, _alloc_canonical(name))
        with open(path, 'w', encoding=encoding) as f:
            if isinstance(content, str):
                f.write(content)
                return
            for row in content:
                if not isinstance(row, str):
                    row = '\t'.join(str(x) for x in row)
                f.write(row.rstrip('\n') + '\n')
    except Exception:
        # Non-fatal: a failed snapshot must not abort the computation
        return


def debug_path(name: str) -> str:
    """Return the path a snapshot called `name` was (or would be) written to."""
    base = os.path.basename(name)
    with _lock:
        if base in _mapping:
            return os.path.join(DEBUG_DIR, _mapping[base])
    return os.path.join(DEBUG_DIR, base)


def reset_debug_sequence():
    """Forget allocated snapshot names so numbering restarts at 001."""
    global _counter
    with _lock:
        _mapping.clear()
        _counter = 0


class AuditLog:
    """Plain-text audit trail of a CLI run, one line per step.

    Opened from `--audit-log PATH`; an empty or missing path disables it.
    Write failures are swallowed so auditing never changes a run's outcome.
    """

    def __init__(self, path=None):
        self._fp = None
        if path:
            try:
                self._fp = open(path, 'w', encoding='utf-8')
                self._fp.write('AUDIT LOG START\n')
            except Exception:
                self._fp = None

    @property
    def enabled(self) -> bool:
        return self._fp is not None

    def write(self, step: str, **fields):
        if self._fp is None:
            return
        detail = ' '.join(f"{k}={v}" for k, v in fields.items())
        try:
            self._fp.write(f"{step}: {detail}\n" if detail else f"{step}\n")
        except Exception:
            pass

    def close(self):
        if self._fp is None:
            return
        try:
            self._fp.write('AUDIT LOG END\n')
            self._fp.close()
        except Exception:
            pass
        self._fp = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
        return False
