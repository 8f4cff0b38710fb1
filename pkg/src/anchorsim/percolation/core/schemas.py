# -*- coding: utf-8 -*-
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field


class PercolationMode(str, Enum):
    BOND = "bond"
    SITE = "site"


class PercolationConfig(BaseModel):
    """
    Bernoulli percolation configuration omega.

    An edge (bond mode) or vertex (site mode) is open iff the PRF uniform of
    its token under ``seed`` is below ``p``, so configurations at different p
    with the same seed are monotonically coupled.
    """

    model_config = ConfigDict(frozen=True)

    p: float = Field(ge=0.0, le=1.0)
    mode: PercolationMode = PercolationMode.BOND
    seed: int = 0

    def with_seed(self, seed: int) -> "PercolationConfig":
        return self.model_copy(update={"seed": seed})


class ExplorationStatus(str, Enum):
    FINITE = "finite"
    BUDGET_EXCEEDED = "budget_exceeded"


@dataclass(frozen=True)
class ClusterReport:
    """
    Outcome of the ordered cluster-growth process.

    ``trace[j]`` is Y_j, 1 when the j-th examined edge (or vertex) was open.
    ``closed_boundary_count`` is n = |boundary of V(H)| and
    ``internal_closed_count`` counts closed examined edges whose far endpoint
    joined the cluster later (only possible on graphs with cycles).
    ``open_edge_count`` is the number of open edges with both ends in V(H)
    and is filled only for Finite bond reports.
    """

    status: ExplorationStatus
    vertices: Tuple[Any, ...]
    trace: bytes
    accepted_count: int
    rejected_count: int
    closed_boundary_count: Optional[int]
    internal_closed_count: int
    open_edge_count: Optional[int]
    mode: PercolationMode = PercolationMode.BOND

    @property
    def finite(self) -> bool:
        return self.status == ExplorationStatus.FINITE

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def examined_count(self) -> int:
        return len(self.trace)

    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)


class BoundaryHistogram(BaseModel):
    """Counts of Finite trials by closed-boundary size; BudgetExceeded trials count as survived."""

    trials: int
    survived: int
    counts: Dict[int, int]

    def frequencies(self) -> Dict[int, float]:
        if not self.trials:
            return {}
        return {n: c / self.trials for n, c in sorted(self.counts.items())}


class SurvivalPoint(BaseModel):
    p: float
    trials: int
    survived: int
    frequency: float
    ci: Optional[float] = None
    mean_finite_size: Optional[float] = None


class SurvivalCurve(BaseModel):
    mode: PercolationMode
    budget: int
    points: List[SurvivalPoint]
