"""Exception types shared across the package."""


class ParseError(ValueError):
    """Raised when a weight-vector string does not match the grammar."""


class NotReflexiveError(ValueError):
    """Raised when an operation requires a reflexive weight vector."""


class BudgetExceededError(RuntimeError):
    """Raised when a brute-force enumeration would exceed its point budget.

    Rather than silently truncating, enumeration routines estimate their
    workload up front and refuse instances that exceed the cap.
    """

    def __init__(self, message, estimated=None, cap=None):
        super().__init__(message)
        self.estimated = estimated
        self.cap = cap
