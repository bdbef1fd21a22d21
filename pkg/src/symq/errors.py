"""Exception hierarchy shared across the package."""


class SymqError(Exception):
    """Base class for all errors raised by symq."""


class InvalidOrderError(SymqError, ValueError):
    pass


class NotAUnitError(SymqError, ValueError):
    pass


class ShapeError(SymqError, ValueError):
    pass


class ContractError(SymqError, ValueError):
    """A precondition on a verified object (automorphism, quandle) was violated."""


class ClosureError(SymqError, ValueError):
    """A subset is not closed under the relevant point symmetries."""


class DomainError(SymqError, ValueError):
    pass


class BudgetError(SymqError, RuntimeError):
    """A search exceeded its configured size or node budget."""


class InconsistencyError(SymqError, RuntimeError):
    """Two independent enumeration routes disagreed."""

    def __init__(self, message, counts=None):
        super().__init__(message)
        self.counts = counts or {}
