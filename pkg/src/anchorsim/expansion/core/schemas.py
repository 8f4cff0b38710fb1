# -*- coding: utf-8 -*-
from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict


class BoundaryMode(str, Enum):
    EDGE = "edge"
    VERTEX = "vertex"


class ExpansionProfile(BaseModel):
    """
    Exact isoperimetric profile of connected sets containing the root.

    ``min_boundary[k]`` is the least boundary size over sets of size k,
    ``ratio[k] = min_boundary[k] / k`` (f(k)), and
    ``iota_tail[n] = min(ratio[k] for n <= k <= max_size)``.
    """

    mode: BoundaryMode
    max_size: int
    set_counts: Dict[int, int]
    min_boundary: Dict[int, int]
    ratio: Dict[int, float]
    iota_tail: Dict[int, float]

    @property
    def iota_exact(self) -> Dict[int, float]:
        return self.ratio


class AnimalCounts(BaseModel):
    """
    ``counts[n]`` = number of connected sets S containing the root with
    boundary size n, for 1 <= n <= max_boundary.

    Counts are exact for n <= ``complete_through``. ``unbounded`` is set when
    sets of the largest enumerated size still have boundary <= max_boundary,
    so the count may keep growing with the region.
    """

    mode: BoundaryMode
    max_boundary: int
    max_size: int
    counts: Dict[int, int]
    complete_through: int
    unbounded: bool


class Thresholds(BaseModel):
    """
    Percolation thresholds implied by an anchored expansion constant h.

    ``pc_bound`` = ``appendix_threshold`` = 1/(1+h) and
    ``thm11_threshold`` = 1 - h/(1+h)^(1+1/h).
    """

    model_config = ConfigDict(frozen=True)

    h: float
    pc_bound: float
    thm11_threshold: float
    appendix_threshold: float


class PsiBoundCheck(BaseModel):
    h: float
    log_psi: float
    verdicts: Dict[int, bool]
    n0: Optional[int]

    @property
    def holds(self) -> bool:
        return self.n0 is not None


class ChernoffCase(BaseModel):
    n: int
    p: float
    alpha: float
    tail: float
    bound: float


class ChernoffCheck(BaseModel):
    cases: int
    violations: List[ChernoffCase]
    worst_ratio: float

    @property
    def holds(self) -> bool:
        return not self.violations


class StretchIndexing(str, Enum):
    STRETCHED = "stretched"
    BASE = "base"


class BaseIndexedProfile(BaseModel):
    """
    Profile of a random stretch indexed by the number n of original vertices.

    ``ratio[n]`` is the least |boundary| / |S| over connected sets S of the
    stretch containing the root and exactly n original vertices,
    ``iota_tail[n] = min(ratio[k] for n <= k <= max_size)`` and
    ``set_counts[n]`` is the number of base sets with n vertices.
    """

    mode: BoundaryMode
    max_size: int
    set_counts: Dict[int, int]
    ratio: Dict[int, float]
    iota_tail: Dict[int, float]


class StretchProfileSummary(BaseModel):
    law: dict
    indexing: StretchIndexing = StretchIndexing.STRETCHED
    seeds: int
    max_size: int
    mean_ratio: Dict[int, float]
    mean_iota_tail: Dict[int, float]
