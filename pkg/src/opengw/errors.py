"""Exception types shared across the package."""


class SpecError(ValueError):
    """Input violates a documented precondition or type invariant."""


class InvariantViolation(AssertionError):
    """A structural property that must always hold was found broken.

    Raised when an internal consistency check fails, e.g. a boundary split
    producing two wobbly sides. The CLI maps this to exit status 2.
    """
