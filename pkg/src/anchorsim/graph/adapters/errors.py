# -*- coding: utf-8 -*-
from anchorsim.errors import AnchorsimError


class GraphOracleError(AnchorsimError):
    pass


class VertexDecodeError(GraphOracleError):
    pass


class FamilyMismatchError(GraphOracleError):
    pass


class InvalidGroupError(GraphOracleError):
    pass


class BudgetExceededError(GraphOracleError):
    """Raised when a materialisation would exceed a configured vertex budget."""

    def __init__(self, budget_name: str, budget: int, detail: str = ""):
        self.budget_name = budget_name
        self.budget = budget
        message = f"{budget_name}={budget} exceeded"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class CapabilityNotSupported(GraphOracleError):
    """Raised when a requested capability is not supported by the graph family."""

    pass
