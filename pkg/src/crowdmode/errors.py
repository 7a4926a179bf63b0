"""Exception hierarchy shared by all modules.

The CLI maps :class:`DomainError` to exit code 3 and
:class:`InvariantError` to exit code 4.
"""


class CrowdModeError(Exception):
    pass


class DomainError(CrowdModeError, ValueError):
    """Input outside the mathematical domain of an operation."""


class PoleError(DomainError, ZeroDivisionError):
    """Evaluation of a rational function at a zero of its denominator."""


class InvariantError(CrowdModeError, AssertionError):
    """An internal consistency check failed; indicates a bug, never bad input."""


class PrecisionError(InvariantError):
    """Refinement failed to reach the requested number of digits."""
