class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class CompositionError(DomainError):
    """Operands of a composition do not fit together."""


class BudgetExceeded(RuntimeError):
    """A computation outgrew its budget.

    ``partial_size`` records how far the computation got before stopping.
    """

    def __init__(self, message, partial_size=None):
        super().__init__(message)
        self.partial_size = partial_size


class ArityCapError(BudgetExceeded):
    pass


class OracleInfeasible(BudgetExceeded):
    pass
