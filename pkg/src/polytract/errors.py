"""Exception hierarchy.

Two families matter to callers: malformed input (bad JSON, wrong norms,
negative entries) and domain errors (a precondition of an operation is
not met).  The CLI maps them to exit codes 2 and 1.
"""


class PolytractError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class MalformedInputError(PolytractError, ValueError):
    exit_code = 2


class DomainError(PolytractError):
    exit_code = 1


class NotMConvexError(DomainError):
    pass


class PreconditionError(DomainError):
    pass


class GuardExceededError(DomainError):
    pass


class TractMismatchError(DomainError):
    pass


class NotIdempotentError(DomainError):
    pass


class SupportMismatchError(DomainError):
    pass
