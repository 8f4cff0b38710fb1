# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
from collections import deque
from functools import lru_cache
from typing import List, Optional, Tuple

from anchorsim import config, logger
from anchorsim.common.prf import prf_uniform
from anchorsim.graph.adapters.errors import GraphOracleError, VertexDecodeError
from anchorsim.graph.core.base_graph_oracle import BaseGraphOracle, requires_capability
from anchorsim.graph.core.schemas import FamilyTag
from anchorsim.gw.core.schemas import OffspringDistribution, PlaneTree

log = logger.get_logger(__name__)


class GraphOracle(BaseGraphOracle):
    """
    Lazily generated Galton-Watson tree.

    The offspring count of vertex v (a child-index tuple) is drawn from the
    PRF keyed by (seed, v), so the tree is fixed by (offspring law, seed) and
    nothing is generated before it is visited.
    """

    family = FamilyTag.GW_TREE
    capabilities = {"geodesics", "materialize"}

    def __init__(
        self,
        offspring: OffspringDistribution,
        seed: int = 0,
        truncation_budget: Optional[int] = None,
    ):
        if offspring.max_offspring > 255:
            raise GraphOracleError("Offspring support must fit in one byte per child index")
        self.offspring = offspring
        self.seed = seed
        self.truncation_budget = truncation_budget or config.GW_TRUNCATION_BUDGET
        self.basepoint = ()
        self.child_count = lru_cache(maxsize=1 << 16)(self._child_count)
        log.debug(f"Initialized GW tree oracle (mean {offspring.mean:.4f}, seed {seed})")

    def __repr__(self):
        return f"GWTreeOracle(probs={self.offspring.probs}, seed={self.seed})"

    def __getstate__(self):
        state = self.__dict__.copy()
        del state["child_count"]
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self.child_count = lru_cache(maxsize=1 << 16)(self._child_count)

    def _child_count(self, v: Tuple[int, ...]) -> int:
        return self.offspring.quantile(prf_uniform(self.seed, b"gw" + bytes(v)))

    def neighbors(self, v: Tuple[int, ...]) -> List[Tuple[int, ...]]:
        out = [v[:-1]] if v else []
        out.extend(v + (i,) for i in range(self.child_count(v)))
        return out

    def degree(self, v) -> int:
        return self.child_count(v) + (1 if v else 0)

    @property
    def max_degree(self) -> int:
        return self.offspring.max_offspring + 1

    def encode(self, v: Tuple[int, ...]) -> bytes:
        return bytes(v)

    def decode(self, data: bytes) -> Tuple[int, ...]:
        v = tuple(data)
        for depth in range(len(v)):
            if v[depth] >= self.child_count(v[:depth]):
                raise VertexDecodeError("Vertex {!r} is not in this GW tree".format(v))
        return v

    def toward_basepoint(self, v):
        return v[:-1] if v else None

    def norm(self, v) -> int:
        return len(v)

    @requires_capability("materialize")
    def materialize(self, max_vertices: Optional[int] = None) -> PlaneTree:
        """Breadth-first copy of the tree, truncated after ``max_vertices`` vertices."""
        budget = max_vertices or self.truncation_budget
        counts = []
        queue = deque([()])
        generated = 1
        truncated = False
        frontier = 0
        while queue:
            v = queue.popleft()
            if truncated:
                counts.append(0)
                frontier += 1
                continue
            k = self.child_count(v)
            room = budget - generated
            if k > room:
                truncated = True
                if room == 0:
                    counts.append(0)
                    frontier += 1
                    continue
                k = room
            counts.append(k)
            generated += k
            queue.extend(v + (i,) for i in range(k))
        if truncated:
            log.debug(f"GW tree truncated at {budget} vertices")
        return PlaneTree(child_counts=tuple(counts), truncated=truncated, frontier=frontier)
