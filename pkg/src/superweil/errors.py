"""Exception types shared across the package."""


class SuperweilError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(SuperweilError):
    """An exact mathematical invariant failed (Jacobi, Cartan, d^2, ...)."""


class BudgetError(SuperweilError):
    """A product or operator application would exceed the degree truncation."""


class FormatError(SuperweilError):
    """Malformed input file (bad rational, unknown basis name, ...)."""
