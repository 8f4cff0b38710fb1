# -*- coding: utf-8 -*-
# Pydantic models and plain containers for offspring laws, their backbone/bush
# decomposition and sampled plane trees.
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from anchorsim import config

# Nested tuples: a vertex is the tuple of its children's shapes.
Shape = Tuple


class OffspringDistribution(BaseModel):
    """Finitely supported offspring law p_0..p_K (K <= 64)."""

    model_config = ConfigDict(frozen=True)

    probs: Tuple[float, ...] = Field(min_length=1, max_length=65)

    @field_validator("probs")
    @classmethod
    def check_probabilities(cls, probs):
        if any(p < 0 or not math.isfinite(p) for p in probs):
            raise ValueError("Offspring probabilities must be finite and non-negative")
        total = math.fsum(probs)
        if abs(total - 1.0) > config.DEFAULT_TOLERANCE:
            raise ValueError("Offspring probabilities sum to {!r}, not 1".format(total))
        return tuple(float(p) for p in probs)

    @classmethod
    def parse(cls, text: str) -> "OffspringDistribution":
        """Build from a comma separated list such as ``"0.25,0,0.75"``."""
        return cls(probs=tuple(float(x) for x in text.split(",") if x.strip()))

    def p(self, k: int) -> float:
        return self.probs[k] if 0 <= k < len(self.probs) else 0.0

    @property
    def max_offspring(self) -> int:
        return len(self.probs) - 1

    @property
    def mean(self) -> float:
        return math.fsum(k * p for k, p in enumerate(self.probs))

    @property
    def supercritical(self) -> bool:
        return self.mean > 1.0

    def pgf(self, s: float) -> float:
        """Generating function f(s) = sum_k p_k s^k."""
        return float(np.polynomial.polynomial.polyval(s, self.probs))

    @cached_property
    def cdf(self) -> np.ndarray:
        cdf = np.cumsum(self.probs)
        cdf[-1] = 1.0
        return cdf

    def quantile(self, u: float) -> int:
        return int(np.searchsorted(self.cdf, u, side="right"))

    def sample(self, uniforms: np.ndarray) -> np.ndarray:
        """Offspring counts for an array of uniforms in [0, 1)."""
        return np.searchsorted(self.cdf, uniforms, side="right").astype(np.int64)


class BackboneDecomposition(BaseModel):
    """
    Decomposition of a supercritical law with extinction probability q < 1.

    ``backbone_law[k]`` = p_k (1 - q^k) / (1 - q) is the offspring law of a
    vertex of the tree conditioned on survival. ``bush_law`` is the law
    conditioned on extinction, p_k q^(k-1); it is None when q = 0.
    ``open_children_law`` is the number of children with an infinite line of
    descent, given that the vertex has one.
    """

    extinction: float
    backbone_law: List[float]
    bush_law: Optional[List[float]]
    open_children_law: List[float]
    gap_parameter: float


@dataclass(frozen=True)
class PlaneTree:
    """
    Ordered rooted tree stored as child counts in breadth-first order.

    When ``truncated`` is set the tree continues beyond the stored vertices;
    the last ``frontier`` vertices were never expanded and carry a child
    count of 0.
    """

    child_counts: Tuple[int, ...]
    truncated: bool = False
    frontier: int = 0

    @property
    def size(self) -> int:
        return len(self.child_counts)

    def children(self) -> List[List[int]]:
        out = []
        nxt = 1
        for count in self.child_counts:
            kids = [c for c in range(nxt, nxt + count) if c < self.size]
            out.append(kids)
            nxt += count
        return out

    def depth_shape(self, depth: int) -> Shape:
        kids = self.children()

        def shape(v: int, level: int) -> Shape:
            if level == depth:
                return ()
            return tuple(shape(c, level + 1) for c in kids[v])

        return shape(0, 0)

    def has_leaf(self) -> bool:
        """True if an expanded vertex has no children."""
        return any(c == 0 for c in self.child_counts[: self.size - self.frontier])


class SizeTail(BaseModel):
    sizes: List[int]
    tail: List[float]
    slope: Optional[float] = None
    slope_ci: Optional[Tuple[float, float]] = None
    trials: int


class SizeDistribution(BaseModel):
    trials: int
    kept: int
    frequencies: Dict[int, float]


class ShapeComparison(BaseModel):
    """Chi-square two-sample comparison of truncated plane-tree shapes."""

    statistic: float
    pvalue: float
    dof: int
    categories: int


class ExtinctionEstimate(BaseModel):
    trials: int
    extinct: int
    frequency: float
    ci: Optional[float] = None
