"""Exception types shared across the package."""


class PermPolyError(Exception):
    """Base class for errors raised by permpoly."""


class InvalidArgument(PermPolyError, ValueError):
    pass


class NotDivisible(PermPolyError, ArithmeticError):
    """Raised by exact division when the remainder is nonzero."""


class PreconditionFailed(PermPolyError, ValueError):
    """A construction hypothesis does not hold.

    The message names the violated clause.
    """


class InternalInconsistency(PermPolyError, AssertionError):
    """A result that is guaranteed by theory failed an independent check."""


class ResourceLimit(PermPolyError, RuntimeError):
    """The requested computation exceeds the configured size cap."""


class ConfigError(PermPolyError, ValueError):
    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class RecordParseError(PermPolyError, ValueError):
    def __init__(self, lineno, message):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")
