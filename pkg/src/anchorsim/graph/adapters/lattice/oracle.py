# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
from typing import List, Tuple

from anchorsim import logger
from anchorsim.graph.adapters.errors import GraphOracleError, VertexDecodeError
from anchorsim.graph.core import encoding
from anchorsim.graph.core.base_graph_oracle import BaseGraphOracle
from anchorsim.graph.core.schemas import FamilyTag

log = logger.get_logger(__name__)


class GraphOracle(BaseGraphOracle):
    """The integer lattice Z^d; vertices are d-tuples of ints, basepoint the origin."""

    family = FamilyTag.LATTICE
    capabilities = {"geodesics"}

    def __init__(self, d: int):
        if d < 1:
            raise GraphOracleError("Lattice dimension must be >= 1, got {}".format(d))
        self.d = d
        self.basepoint = (0,) * d
        log.debug(f"Initialized Z^{d} oracle")

    def __repr__(self):
        return f"LatticeOracle(d={self.d})"

    def neighbors(self, v: Tuple[int, ...]) -> List[Tuple[int, ...]]:
        out = []
        for i in range(self.d):
            for step in (1, -1):
                w = list(v)
                w[i] += step
                out.append(tuple(w))
        return out

    def degree(self, v) -> int:
        return 2 * self.d

    @property
    def max_degree(self) -> int:
        return 2 * self.d

    def encode(self, v: Tuple[int, ...]) -> bytes:
        return b"".join(encoding.pack_int(x) for x in v)

    def decode(self, data: bytes) -> Tuple[int, ...]:
        if len(data) != 4 * self.d:
            raise VertexDecodeError(
                "Z^{} key must be {} bytes, got {}".format(self.d, 4 * self.d, len(data))
            )
        return tuple(encoding.unpack_int(data, 4 * i) for i in range(self.d))

    def norm(self, v) -> int:
        return sum(abs(x) for x in v)

    def toward_basepoint(self, v):
        # Move the last nonzero coordinate towards zero; the steps form a spanning tree.
        for i in range(self.d - 1, -1, -1):
            if v[i]:
                w = list(v)
                w[i] += -1 if v[i] > 0 else 1
                return tuple(w)
        return None
