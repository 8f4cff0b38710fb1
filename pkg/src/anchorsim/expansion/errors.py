# -*- coding: utf-8 -*-
from anchorsim.errors import AnchorsimError


class ExpansionError(AnchorsimError):
    pass


class TruncationError(ExpansionError):
    pass


class EnumerationBudgetError(ExpansionError):
    """Raised when an enumeration would visit more sets than ENUMERATION_BUDGET allows."""

    def __init__(self, estimate: float, budget: int, detail: str = ""):
        self.estimate = estimate
        self.budget = budget
        message = f"ENUMERATION_BUDGET={budget} exceeded: about {estimate:.3g} connected sets"
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message)


class DomainError(ExpansionError, ValueError):
    pass
