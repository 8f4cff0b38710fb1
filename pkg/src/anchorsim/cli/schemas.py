# -*- coding: utf-8 -*-
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from anchorsim.expansion.core.formulas import DEFAULT_ALPHA_FRACTIONS, DEFAULT_P_GRID
from anchorsim.expansion.core.schemas import BoundaryMode, StretchIndexing
from anchorsim.percolation.core.schemas import PercolationMode

Subcommand = Literal[
    "expansion", "animals", "percolate", "walk", "gw", "stretch", "dist", "thresholds"
]


class PercolationSettings(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    p: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    mode: PercolationMode = PercolationMode.BOND


class ExperimentConfig(BaseModel):
    """
    Everything that determines the result payload of one invocation.

    ``family`` is an oracle spec as accepted by ``create_oracle``; ``params``
    is validated by the parameter model of ``subcommand``. The worker count is
    not part of the config since results do not depend on it.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    subcommand: Subcommand
    family: Dict[str, Any] = Field(default_factory=dict)
    percolation: Optional[PercolationSettings] = None
    params: Dict[str, Any] = Field(default_factory=dict)
    seed: int = Field(default=0, ge=0, lt=2**64)
    format: Literal["json", "csv"] = "json"
    out: str = "-"


# Per-subcommand parameters


class _Params(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class ExpansionParams(_Params):
    max_size: int = Field(ge=1)
    mode: BoundaryMode = BoundaryMode.EDGE
    radius: Optional[int] = Field(default=None, ge=0)


class AnimalsParams(_Params):
    max_boundary: int = Field(ge=1)
    max_size: Optional[int] = Field(default=None, ge=1)
    mode: BoundaryMode = BoundaryMode.EDGE
    radius: Optional[int] = Field(default=None, ge=0)
    check_psi: Optional[float] = Field(default=None, gt=0.0)


class PercolateParams(_Params):
    p_grid: List[float] = Field(min_length=1)
    trials: int = Field(ge=0)
    budget: int = Field(default=100_000, ge=1)
    histogram: bool = False
    min_count: int = Field(default=50, ge=1)


class WalkParams(_Params):
    steps: int = Field(ge=0)
    trials: int = Field(ge=0)
    checkpoints: Literal["geometric"] = "geometric"
    exit_ladder: List[int] = Field(default_factory=list)
    step_cap: Optional[int] = Field(default=None, ge=1)


class GWParams(_Params):
    probs: str
    trials: int = Field(ge=0)
    max_vertices: int = Field(default=1000, ge=1)
    min_count: int = Field(default=50, ge=1)


class StretchParams(_Params):
    law: Dict[str, Any]
    seeds: int = Field(ge=1)
    max_size: int = Field(ge=1)
    mode: BoundaryMode = BoundaryMode.EDGE
    indexing: StretchIndexing = StretchIndexing.BASE


class DistParams(_Params):
    radius: int = Field(ge=0)


class ThresholdsParams(_Params):
    h: List[float] = Field(min_length=1)
    chernoff: bool = False
    n_max: int = Field(default=200, ge=1)
    p_grid: List[float] = Field(default_factory=lambda: list(DEFAULT_P_GRID))
    alpha_fractions: List[float] = Field(default_factory=lambda: list(DEFAULT_ALPHA_FRACTIONS))


PARAMS = {
    "expansion": ExpansionParams,
    "animals": AnimalsParams,
    "percolate": PercolateParams,
    "walk": WalkParams,
    "gw": GWParams,
    "stretch": StretchParams,
    "dist": DistParams,
    "thresholds": ThresholdsParams,
}


class Results(BaseModel):
    """Tabular rows (the CSV body) plus scalar summary values."""

    columns: List[str]
    rows: List[Dict[str, Any]] = Field(default_factory=list)
    summary: Dict[str, Any] = Field(default_factory=dict)
