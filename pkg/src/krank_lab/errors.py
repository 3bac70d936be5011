"""Exception hierarchy shared by every layer of the package."""


class KRankError(Exception):
    """Base class for errors raised by krank_lab."""


class ConfigError(KRankError, ValueError):
    """Invalid configuration or command-line arguments."""


class BoundsError(KRankError, IndexError):
    """A request reaches past the end of a precomputed table."""


class DomainError(KRankError, ValueError):
    """Arguments fall outside the domain where an operation is defined."""


class BudgetError(KRankError, ValueError):
    """A request exceeds a fixed resource budget (enumeration size, degree)."""


class PrecisionError(KRankError, ArithmeticError):
    """Working precision is too low to certify a result."""
