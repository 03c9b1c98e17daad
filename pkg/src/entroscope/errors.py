"""Exception taxonomy shared across the package.

The CLI maps ValidationError to exit code 2 and NumericalFaultError to
exit code 1; everything else is a bug.
"""


class EntroscopeError(Exception):
    """Base class for package errors."""


class ValidationError(EntroscopeError):
    """Bad input: malformed state, angle, partition, file, or config."""


class NumericalFaultError(EntroscopeError):
    """An internal numerical contract broke (non-PSD spectrum, failed
    convergence, violated quantum entropy inequality)."""
