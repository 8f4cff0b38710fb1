# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
from typing import List, Tuple

from anchorsim import logger
from anchorsim.graph.adapters.errors import GraphOracleError, VertexDecodeError
from anchorsim.graph.core.base_graph_oracle import BaseGraphOracle
from anchorsim.graph.core.schemas import FamilyTag

log = logger.get_logger(__name__)


class GraphOracle(BaseGraphOracle):
    """
    The (b+1)-regular tree T_b.

    A vertex is the tuple of child indices on the path from the basepoint ().
    The basepoint has children 0..b, every other vertex children 0..b-1.
    """

    family = FamilyTag.REGULAR_TREE
    capabilities = {"geodesics"}

    def __init__(self, b: int):
        if not 1 <= b <= 255:
            raise GraphOracleError("Tree branching must be in 1..255, got {}".format(b))
        self.b = b
        self.basepoint = ()
        log.debug(f"Initialized T_{b} oracle")

    def __repr__(self):
        return f"RegularTreeOracle(b={self.b})"

    def _child_count(self, v: Tuple[int, ...]) -> int:
        return self.b + 1 if not v else self.b

    def neighbors(self, v: Tuple[int, ...]) -> List[Tuple[int, ...]]:
        out = [v[:-1]] if v else []
        out.extend(v + (i,) for i in range(self._child_count(v)))
        return out

    def degree(self, v) -> int:
        return self.b + 1

    @property
    def max_degree(self) -> int:
        return self.b + 1

    def encode(self, v: Tuple[int, ...]) -> bytes:
        return bytes(v)

    def decode(self, data: bytes) -> Tuple[int, ...]:
        v = tuple(data)
        if v and v[0] > self.b:
            raise VertexDecodeError("Root child index {} out of range".format(v[0]))
        if any(i >= self.b for i in v[1:]):
            raise VertexDecodeError("Child index out of range in {!r}".format(v))
        return v

    def norm(self, v) -> int:
        return len(v)

    def toward_basepoint(self, v):
        return v[:-1] if v else None
