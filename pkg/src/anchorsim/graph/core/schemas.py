# -*- coding: utf-8 -*-
# Data structures shared by every graph family: canonical vertex and edge keys,
# stretch laws, lamplighter states and explicit finite graphs.
import math
from dataclasses import dataclass, field
from enum import IntEnum
from functools import cached_property
from typing import (
    Annotated,
    Any,
    Dict,
    FrozenSet,
    Iterator,
    Literal,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
    Union,
)

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class FamilyTag(IntEnum):
    LATTICE = 1
    REGULAR_TREE = 2
    ROOTED_TREE = 3
    GW_TREE = 4
    STRETCH = 5
    LAMPLIGHTER = 6
    EXPLICIT = 7


class VertexKey(NamedTuple):
    """Canonical encoding of a vertex. Keys of one family are ordered by their bytes."""

    data: bytes
    family_tag: FamilyTag


class EdgeKey(NamedTuple):
    lo: VertexKey
    hi: VertexKey

    @classmethod
    def of(cls, u: VertexKey, v: VertexKey) -> "EdgeKey":
        return cls(u, v) if u <= v else cls(v, u)


# Stretch laws. All mass sits on the positive integers.


class ConstantLaw(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["constant"] = "constant"
    length: int = Field(default=1, ge=1)

    def quantile(self, u: float) -> int:
        return self.length

    def mean(self) -> float:
        return float(self.length)


class GeometricLaw(BaseModel):
    """Geometric law on {1, 2, ...} with success probability ``success``."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["geometric"] = "geometric"
    success: float = Field(gt=0.0, le=1.0)

    def quantile(self, u: float) -> int:
        if self.success >= 1.0:
            return 1
        # P(L >= k) = (1 - success)^(k - 1)
        return 1 + int(math.floor(math.log1p(-u) / math.log1p(-self.success)))

    def mean(self) -> float:
        return 1.0 / self.success


class TruncatedPowerLaw(BaseModel):
    """P(L = l) proportional to l^(-exponent) for 1 <= l <= cap."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["powerlaw"] = "powerlaw"
    exponent: float = Field(gt=0.0)
    cap: int = Field(default=1000, ge=1)

    @cached_property
    def probabilities(self) -> np.ndarray:
        weights = np.arange(1, self.cap + 1, dtype=float) ** (-self.exponent)
        return weights / math.fsum(weights)

    @cached_property
    def cdf(self) -> np.ndarray:
        cdf = np.cumsum(self.probabilities)
        cdf[-1] = 1.0
        return cdf

    def quantile(self, u: float) -> int:
        return int(np.searchsorted(self.cdf, u, side="right")) + 1

    def mean(self) -> float:
        return float(np.dot(np.arange(1, self.cap + 1), self.probabilities))


StretchLaw = Annotated[
    Union[ConstantLaw, GeometricLaw, TruncatedPowerLaw], Field(discriminator="kind")
]


class StretchDescriptor(BaseModel):
    model_config = ConfigDict(frozen=True)

    law: StretchLaw
    seed: int = 0


# Structured vertices of composite families


class LampState(NamedTuple):
    """Marker position plus the finitely supported lamp configuration (identity omitted)."""

    marker: Any
    lamps: FrozenSet[Tuple[Any, int]] = frozenset()

    @classmethod
    def of(cls, marker: Any, lamps: Optional[Mapping[Any, int]] = None) -> "LampState":
        lamps = lamps or {}
        return cls(marker, frozenset((site, value) for site, value in lamps.items() if value))

    def lamp_map(self) -> Dict[Any, int]:
        return dict(self.lamps)


class OriginalVertex(NamedTuple):
    base: Any


class PathInteriorVertex(NamedTuple):
    """Vertex ``index`` steps from ``lo`` along the path replacing base edge (lo, hi)."""

    lo: Any
    hi: Any
    index: int


@dataclass(frozen=True)
class FiniteGraph:
    """
    Explicit finite graph with vertices sorted by VertexKey.

    ``ambient_degree`` is the degree of each vertex in the graph it was cut
    from; boundaries measured with it are those of the ambient graph.
    ``radius`` is the ball radius, or None for graphs given explicitly.
    """

    vertices: Tuple[Any, ...]
    keys: Tuple[VertexKey, ...]
    adjacency: Tuple[Tuple[int, ...], ...]
    ambient_degree: Tuple[int, ...]
    distance: Tuple[int, ...]
    root: int = 0
    radius: Optional[int] = None
    _index: Dict[Any, int] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if not self._index:
            self._index.update({v: i for i, v in enumerate(self.vertices)})

    def __len__(self) -> int:
        return len(self.vertices)

    def index_of(self, vertex: Any) -> int:
        return self._index[vertex]

    def edges(self) -> Iterator[Tuple[int, int]]:
        for i, nbrs in enumerate(self.adjacency):
            for j in nbrs:
                if i < j:
                    yield i, j

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    @property
    def max_ambient_degree(self) -> int:
        return max(self.ambient_degree) if self.ambient_degree else 0

    def is_forest(self) -> bool:
        return nx.is_forest(self.to_networkx())

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(len(self.vertices)))
        graph.add_edges_from(self.edges())
        return graph

    @classmethod
    def from_edges(
        cls, num_vertices: int, edges: Sequence[Tuple[int, int]], root: int = 0
    ) -> "FiniteGraph":
        """Explicit graph on vertices 0..num_vertices-1; boundaries are intrinsic."""
        graph = nx.Graph()
        graph.add_nodes_from(range(num_vertices))
        graph.add_edges_from((int(a), int(b)) for a, b in edges if a != b)
        lengths = nx.single_source_shortest_path_length(graph, root)
        # Unreachable vertices get the sentinel distance num_vertices.
        distance = tuple(lengths.get(i, num_vertices) for i in range(num_vertices))
        adjacency = tuple(tuple(sorted(graph.neighbors(i))) for i in range(num_vertices))
        keys = tuple(
            VertexKey(i.to_bytes(4, "big"), FamilyTag.EXPLICIT) for i in range(num_vertices)
        )
        return cls(
            vertices=tuple(range(num_vertices)),
            keys=keys,
            adjacency=adjacency,
            ambient_degree=tuple(len(nbrs) for nbrs in adjacency),
            distance=distance,
            root=root,
            radius=None,
        )
