"""Exception hierarchy shared by every module.

Exit codes follow the CLI contract: 2 usage (argparse), 3 domain, 4 resource
cap.
"""


class LrcError(Exception):
    exit_code = 1


class DomainError(LrcError):
    """Arguments outside a function's stated domain."""

    exit_code = 3


class NotPrimePower(DomainError):
    """Field order is not a prime power."""


class InconsistentEnumerator(DomainError):
    """A transform produced negative or fractional coefficients."""


class ParseError(LrcError):
    """Malformed code file; carries the offending position."""

    exit_code = 3

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = "" if line is None else f" (line {line}" + (
            f", column {column})" if column is not None else ")"
        )
        super().__init__(message + where)


class TooLarge(LrcError):
    """Work exceeds a desk-scale enumeration cap."""

    exit_code = 4


class BudgetExceeded(TooLarge):
    """Search budget exhausted before an exact answer was reached."""


class RetryExhausted(TooLarge):
    """Rejection sampling did not produce a valid object in time."""
