# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
import struct
from typing import List, Optional, Sequence

from anchorsim import logger
from anchorsim.graph.adapters.errors import GraphOracleError, VertexDecodeError
from anchorsim.graph.core.base_graph_oracle import BaseGraphOracle
from anchorsim.graph.core.schemas import FamilyTag

log = logger.get_logger(__name__)


class GraphOracle(BaseGraphOracle):
    """
    Rooted tree, either the infinite rooted b-ary tree or an explicit finite tree.

    Infinite mode (``b`` given): every vertex, the root included, has b
    children; vertices are child-index tuples. ``b=2`` is the rooted full
    binary tree. Explicit mode (``parents`` given): vertices are 0..n-1,
    ``parents[0]`` is ignored and vertex 0 is the root.
    """

    family = FamilyTag.ROOTED_TREE
    capabilities = {"geodesics"}

    def __init__(self, b: Optional[int] = None, parents: Optional[Sequence[int]] = None):
        if (b is None) == (parents is None):
            raise GraphOracleError("Rooted tree needs exactly one of 'b' or 'parents'")
        self.b = b
        self.parents = None
        self._children = None
        if parents is not None:
            self._init_explicit(list(parents))
            self.basepoint = 0
            log.debug(f"Initialized explicit rooted tree with {len(self.parents)} vertices")
        else:
            if not 1 <= b <= 255:
                raise GraphOracleError("Tree branching must be in 1..255, got {}".format(b))
            self.basepoint = ()
            log.debug(f"Initialized rooted {b}-ary tree oracle")

    def _init_explicit(self, parents: List[int]):
        n = len(parents)
        if n == 0:
            raise GraphOracleError("Explicit tree needs at least one vertex")
        children = [[] for _ in range(n)]
        for v in range(1, n):
            p = parents[v]
            if not 0 <= p < v:
                raise GraphOracleError(
                    "Parent of vertex {} must be an earlier vertex, got {}".format(v, p)
                )
            children[p].append(v)
        self.parents = tuple([-1] + parents[1:])
        self._children = tuple(tuple(c) for c in children)

    @property
    def explicit(self) -> bool:
        return self.parents is not None

    def __repr__(self):
        if self.explicit:
            return f"RootedTreeOracle(n={len(self.parents)})"
        return f"RootedTreeOracle(b={self.b})"

    def neighbors(self, v) -> List:
        if self.explicit:
            out = [self.parents[v]] if v else []
            out.extend(self._children[v])
            return out
        out = [v[:-1]] if v else []
        out.extend(v + (i,) for i in range(self.b))
        return out

    def degree(self, v) -> int:
        if self.explicit:
            return len(self._children[v]) + (1 if v else 0)
        return self.b + (1 if v else 0)

    @property
    def max_degree(self) -> int:
        if self.explicit:
            return max(self.degree(v) for v in range(len(self.parents)))
        return self.b + 1

    def encode(self, v) -> bytes:
        if self.explicit:
            return struct.pack(">I", v)
        return bytes(v)

    def decode(self, data: bytes):
        if self.explicit:
            if len(data) != 4:
                raise VertexDecodeError("Explicit tree keys are 4 bytes, got {}".format(len(data)))
            (v,) = struct.unpack(">I", data)
            if v >= len(self.parents):
                raise VertexDecodeError(
                    "Vertex {} not in tree of size {}".format(v, len(self.parents))
                )
            return v
        v = tuple(data)
        if any(i >= self.b for i in v):
            raise VertexDecodeError("Child index out of range in {!r}".format(v))
        return v

    def toward_basepoint(self, v):
        if self.explicit:
            return self.parents[v] if v else None
        return v[:-1] if v else None

    def norm(self, v) -> int:
        if self.explicit:
            return len(self.path_to_basepoint(v)) - 1
        return len(v)
