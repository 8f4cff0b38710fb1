# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
from collections import deque
from typing import Any, List, Optional

from anchorsim import config, logger
from anchorsim.graph.adapters.errors import BudgetExceededError, GraphOracleError
from anchorsim.graph.adapters.lamplighter.oracle import GraphOracle as LamplighterOracle
from anchorsim.graph.adapters.stretch.oracle import stretch_length
from anchorsim.graph.core.base_graph_oracle import BaseGraphOracle
from anchorsim.graph.core.finite_group import FiniteGroupGraph
from anchorsim.graph.core.schemas import FiniteGraph, VertexKey

log = logger.get_logger(__name__)

__all__ = ["as_vertex", "ball", "lamplighter_product", "neighbors", "stretch_length"]


def as_vertex(oracle: BaseGraphOracle, v: Any):
    """Accept either a VertexKey or a structured vertex of ``oracle``."""
    if isinstance(v, VertexKey):
        return oracle.from_key(v)
    return v


def neighbors(oracle: BaseGraphOracle, v: VertexKey) -> List[VertexKey]:
    """Neighbor keys of the vertex with key ``v`` (decode errors propagate)."""
    vertex = oracle.from_key(v)
    return [oracle.key(u) for u in oracle.neighbors(vertex)]


def lamplighter_product(base: BaseGraphOracle, group: FiniteGroupGraph) -> LamplighterOracle:
    return LamplighterOracle(base=base, group=group)


def ball(
    oracle: BaseGraphOracle, center: Any, radius: int, budget: Optional[int] = None
) -> FiniteGraph:
    """
    Induced subgraph on {x : dist(x, center) <= radius}.

    Vertices are sorted by VertexKey and carry their distance label and their
    degree in the ambient graph.
    """
    if radius < 0:
        raise GraphOracleError("Ball radius must be >= 0, got {}".format(radius))
    budget = budget or config.BALL_VERTEX_BUDGET
    center = as_vertex(oracle, center)

    dist = {center: 0}
    queue = deque([center])
    while queue:
        v = queue.popleft()
        if dist[v] == radius:
            continue
        for u in oracle.neighbors(v):
            if u not in dist:
                if len(dist) >= budget:
                    err_msg = "Ball of radius {} around {!r} has more than {} vertices".format(
                        radius, center, budget
                    )
                    log.error(err_msg)
                    raise BudgetExceededError("BALL_VERTEX_BUDGET", budget, err_msg)
                dist[u] = dist[v] + 1
                queue.append(u)

    keyed = sorted((oracle.key(v), v) for v in dist)
    keys = tuple(k for k, _ in keyed)
    vertices = tuple(v for _, v in keyed)
    index = {v: i for i, v in enumerate(vertices)}
    adjacency = []
    ambient = []
    for v in vertices:
        nbrs = oracle.neighbors(v)
        ambient.append(len(nbrs))
        adjacency.append(tuple(sorted(index[u] for u in nbrs if u in index)))
    log.debug(f"Ball of radius {radius} has {len(vertices)} vertices")
    return FiniteGraph(
        vertices=vertices,
        keys=keys,
        adjacency=tuple(adjacency),
        ambient_degree=tuple(ambient),
        distance=tuple(dist[v] for v in vertices),
        root=index[center],
        radius=radius,
        _index=index,
    )
