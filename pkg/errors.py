"""Exception types shared by the orbit-counting modules.

Library code raises these; `orbitzeta.py` maps them to process exit codes
(see EXIT_CODES below and CONFIGURATION.md).
"""

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CAP_EXCEEDED = 2
EXIT_CONSISTENCY = 3
EXIT_IO = 4


class OrbitZetaError(Exception):
    """Base class for every error raised on purpose by this package."""

    exit_code = EXIT_USAGE


class DomainError(OrbitZetaError, ValueError):
    """An argument is outside the domain of the operation (d = 0, b < 2, L not in M, ...)."""

    exit_code = EXIT_USAGE


class UnsupportedOperationError(OrbitZetaError, ValueError):
    """The operation exists but not for this group or lattice shape."""

    exit_code = EXIT_USAGE


class CapExceededError(OrbitZetaError, RuntimeError):
    """An enumeration would exceed a configured cap."""

    exit_code = EXIT_CAP_EXCEEDED

    def __init__(self, what: str, size, cap):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: size {size} exceeds cap {cap}")

    def __reduce__(self):
        return type(self), (self.what, self.size, self.cap)


class ConsistencyError(OrbitZetaError, RuntimeError):
    """Two independent computations of the same quantity disagree."""

    exit_code = EXIT_CONSISTENCY


def exit_code_for(exc: BaseException) -> int:
    """Return the process exit code for an exception raised during a run."""
    if isinstance(exc, OrbitZetaError):
        return exc.exit_code
    if isinstance(exc, OSError):
        return EXIT_IO
    return EXIT_CONSISTENCY
