"""Exception hierarchy shared by all modules."""


class ForgetSizeError(Exception):
    """Base class for every error raised by the package."""


class TautologyError(ForgetSizeError, ValueError):
    """A clause would contain a variable with both polarities."""


class ParseError(ForgetSizeError, ValueError):
    """Malformed clause token or problem file.

    ``position`` is the character offset inside the token, ``line`` the
    1-based line number inside a problem file; either may be ``None``.
    """

    def __init__(self, message, position=None, line=None):
        self.message = message
        self.position = position
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if position is not None:
            where.append(f"column {position + 1}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class ResourceLimitError(ForgetSizeError, RuntimeError):
    """An exact computation exceeded its configured cap.

    ``lower`` and ``upper`` carry a best-known bracket when the failing
    computation is an optimisation (minimisation search).
    """

    def __init__(self, message, lower=None, upper=None):
        self.lower = lower
        self.upper = upper
        super().__init__(message)


class ClauseNotInFormulaError(ForgetSizeError, ValueError):
    pass


class VariableEscapeError(ForgetSizeError, ValueError):
    """A candidate formula mentions a variable that should be forgotten."""


class SplitError(ForgetSizeError, ValueError):
    """Invalid split plan: missing target, bad partition or reused variable."""


class RepairImpossibleError(SplitError):
    """No partition of the clause can make it superirredundant."""
