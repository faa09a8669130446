"""Exception hierarchy; each class carries the CLI exit code it maps to."""


class KstabError(Exception):
    exit_code = 1


class InputError(KstabError, ValueError):
    """Malformed or out-of-range input."""

    exit_code = 2


class NotLogFanoError(InputError):
    pass


class HypothesisError(InputError):
    """The input violates a standing hypothesis, e.g. ``sum(d) < n + 1``."""


class ResourceCapError(KstabError):
    exit_code = 3

    def __init__(self, what, count, cap):
        super().__init__(f"{what}: {count} exceeds cap {cap}")
        self.count = count
        self.cap = cap


class ConsistencyError(KstabError):
    """Two independent computations disagreed. Always a bug, never tolerance."""

    exit_code = 4

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
