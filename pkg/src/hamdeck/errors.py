"""Exception types shared across the package."""


class HamdeckError(Exception):
    """Base class for all package errors."""


class InputError(HamdeckError, ValueError):
    """Malformed or out-of-contract input (CLI exit code 3)."""


class InfeasibleError(HamdeckError):
    """The requested object provably does not exist for this input (exit 1)."""


class BudgetError(HamdeckError):
    """A retry/node/time budget ran out before an answer was found (exit 2)."""


class SearchFailedError(HamdeckError):
    """Dead end in a Las-Vegas search step; callers resample or retry."""
