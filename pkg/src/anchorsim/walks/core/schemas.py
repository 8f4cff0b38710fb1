# -*- coding: utf-8 -*-
from typing import List, Optional, Tuple

from pydantic import BaseModel

from anchorsim.percolation.core.schemas import PercolationMode


class Checkpoint(BaseModel):
    """
    Walk observables at time n.

    For lamplighter graphs ``marker_norm`` is |m_n|_G, ``range_size`` is
    |R_n|, the marker range, and ``lower``/``upper`` bracket the word-metric
    distance ``exact`` (only filled where a closed form exists). On other
    graphs the marker is the walker itself and lower = upper = exact.
    ``returns`` counts arrivals of the marker at its start after having left.
    """

    n: int
    marker_norm: int
    range_size: int
    lamp_count: int = 0
    lamp_cost: int = 0
    lower: int
    upper: int
    exact: Optional[int] = None
    range_bound: int
    at_start: bool
    returns: int = 0
    regenerations: int = 0
    moves: int = 0


class WalkTrace(BaseModel):
    steps: int
    seed: int
    delayed: bool
    p: Optional[float] = None
    mode: Optional[PercolationMode] = None
    checkpoints: List[Checkpoint]

    @property
    def final(self) -> Checkpoint:
        return self.checkpoints[-1]


class SpeedPoint(BaseModel):
    """Means over trials of statistic / n at one checkpoint, with CI half-widths."""

    n: int
    lower_mean: float
    lower_ci: Optional[float] = None
    upper_mean: float
    upper_ci: Optional[float] = None
    exact_mean: Optional[float] = None
    exact_ci: Optional[float] = None
    range_mean: float
    lamps_mean: float
    regeneration_mean: float


class SpeedEstimate(BaseModel):
    steps: int
    trials: int
    resampled_trials: int
    points: List[SpeedPoint]


class ExitEstimate(BaseModel):
    N: int
    trials: int
    exits: int
    returns: int
    undecided: int
    probability: float
    ci: Optional[float] = None
    step_cap: int

    @property
    def undecided_fraction(self) -> float:
        return self.undecided / self.trials if self.trials else 0.0


class ReturnCurve(BaseModel):
    times: List[int]
    frequencies: List[float]
    trials: int
    coefficient: Optional[float] = None
    coefficient_ci: Optional[Tuple[float, float]] = None
