"""Exception types shared across the package."""


class GitQuotError(Exception):
    """Base class for all package errors."""


class BudgetExceeded(GitQuotError):
    """An exhaustive enumeration would exceed the configured cap.

    The fix is to shrink the parameters (prime, dimensions) or to raise
    the budget explicitly; results are never silently truncated.
    """

    def __init__(self, count, budget, what="subspaces"):
        self.count = count
        self.budget = budget
        super().__init__(f"{what}: {count} exceeds budget {budget}")


class AllIrregular(GitQuotError):
    """Every polarization of the morphism type is irregular."""


class UnsupportedShape(GitQuotError):
    """The morphism type lies outside the scope of the requested procedure."""


class Degenerate(UnsupportedShape):
    """The morphism type is degenerate (all polarizations irregular)."""


class MissingConstant(GitQuotError):
    """A linear algebra constant is needed but was neither computed nor supplied."""


class GateFailure(GitQuotError):
    """A positivity gate on the tilde polarization fails."""
