"""Exception hierarchy shared by the package.

The CLI maps :class:`InputError` to exit status 2 and
:class:`VerificationError` to exit status 1.
"""


class ClusterError(Exception):
    """Base class for all errors raised by qcluster."""


class InputError(ClusterError, ValueError):
    """Malformed user input: bad seed data, unknown vertex, frozen direction..."""


class CompatibilityError(InputError):
    """The pair (B, Lambda) is not compatible."""

    def __init__(self, msg, k=None, j=None):
        super().__init__(msg)
        self.k = k
        self.j = j


class NotAntisymmetricError(ClusterError, ValueError):
    """solve_kl was handed h with bar(h) != -h."""


class DivisionError(ClusterError, ArithmeticError):
    """Exact division in the quantum torus failed."""

    def __init__(self, msg, remainder_term=None):
        super().__init__(msg)
        self.remainder_term = remainder_term


class NotPointedError(ClusterError, ValueError):
    """An element expected to be pointed is not."""


class DominanceUndecided(ClusterError):
    """The dominance order could not be decided within the enumeration bound."""


class VerificationError(ClusterError):
    """A structural check failed; carries the diagnostics witness."""

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class SearchInconclusive(ClusterError):
    """A bounded search found nothing; this is not a proof of absence."""


class WindowError(ClusterError):
    """A computation needed data outside the configured window or truncation."""
