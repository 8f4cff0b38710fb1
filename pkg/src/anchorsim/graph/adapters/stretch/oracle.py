# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
import struct
from functools import lru_cache
from typing import List

from anchorsim import logger
from anchorsim.common.prf import prf_uniform
from anchorsim.graph.adapters.errors import VertexDecodeError
from anchorsim.graph.core import encoding
from anchorsim.graph.core.base_graph_oracle import BaseGraphOracle, requires_capability
from anchorsim.graph.core.schemas import (
    EdgeKey,
    FamilyTag,
    OriginalVertex,
    PathInteriorVertex,
    StretchDescriptor,
)

log = logger.get_logger(__name__)

_TAG_ORIGINAL = b"\x00"
_TAG_INTERIOR = b"\x01"
_TREE_FAMILIES = {FamilyTag.REGULAR_TREE, FamilyTag.ROOTED_TREE, FamilyTag.GW_TREE}


def stretch_length(desc: StretchDescriptor, edge: EdgeKey) -> int:
    """Length L_e of the path replacing base edge ``edge``; a pure function of (seed, edge)."""
    u = prf_uniform(desc.seed, b"stretch" + encoding.edge_bytes(edge))
    return desc.law.quantile(u)


class GraphOracle(BaseGraphOracle):
    """
    Random stretch of a base graph: each base edge e becomes a path of L_e edges.

    Vertices are OriginalVertex(base vertex) or PathInteriorVertex(lo, hi, i)
    with lo < hi by key and 1 <= i <= L_e - 1 counted from lo.
    """

    family = FamilyTag.STRETCH
    capabilities = {"stretch"}

    def __init__(self, base: BaseGraphOracle, descriptor: StretchDescriptor):
        self.base = base
        self.descriptor = descriptor
        self.basepoint = OriginalVertex(base.basepoint)
        self._edge_length = lru_cache(maxsize=1 << 16)(self._compute_length)
        log.debug(f"Initialized stretch of {base!r} with law {descriptor.law.kind}")

    def __repr__(self):
        return f"StretchOracle(base={self.base!r}, law={self.descriptor.law!r})"

    def __getstate__(self):
        state = self.__dict__.copy()
        del state["_edge_length"]
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._edge_length = lru_cache(maxsize=1 << 16)(self._compute_length)

    @property
    def base_is_tree(self) -> bool:
        base = self.base
        while base.family == FamilyTag.STRETCH:
            base = base.base
        return base.family in _TREE_FAMILIES

    def _ordered(self, a, b):
        ka, kb = self.base.key(a), self.base.key(b)
        return (a, b, EdgeKey(ka, kb)) if ka <= kb else (b, a, EdgeKey(kb, ka))

    @requires_capability("stretch")
    def length(self, a, b) -> int:
        """L_e for the base edge between base vertices a and b."""
        lo, hi, _ = self._ordered(a, b)
        return self._edge_length(lo, hi)

    def _compute_length(self, lo, hi) -> int:
        return stretch_length(self.descriptor, EdgeKey(self.base.key(lo), self.base.key(hi)))

    def neighbors(self, v) -> List:
        if isinstance(v, OriginalVertex):
            out = []
            for w in self.base.neighbors(v.base):
                lo, hi, _ = self._ordered(v.base, w)
                n = self.length(lo, hi)
                if n == 1:
                    out.append(OriginalVertex(w))
                elif v.base == lo:
                    out.append(PathInteriorVertex(lo, hi, 1))
                else:
                    out.append(PathInteriorVertex(lo, hi, n - 1))
            return out
        n = self.length(v.lo, v.hi)
        prev = OriginalVertex(v.lo) if v.index == 1 else PathInteriorVertex(v.lo, v.hi, v.index - 1)
        if v.index == n - 1:
            nxt = OriginalVertex(v.hi)
        else:
            nxt = PathInteriorVertex(v.lo, v.hi, v.index + 1)
        return [prev, nxt]

    def degree(self, v) -> int:
        if isinstance(v, OriginalVertex):
            return self.base.degree(v.base)
        return 2

    @property
    def max_degree(self) -> int:
        return max(self.base.max_degree, 2)

    def toward_basepoint(self, v):
        """
        Step along the base oracle's path to its basepoint. Shortest when the
        base is a tree; otherwise the steps still form a spanning tree.
        """
        if isinstance(v, OriginalVertex):
            step = self.base.toward_basepoint(v.base)
            if step is None:
                return None
            lo, hi, _ = self._ordered(v.base, step)
            n = self.length(lo, hi)
            if n == 1:
                return OriginalVertex(step)
            return PathInteriorVertex(lo, hi, 1 if v.base == lo else n - 1)
        n = self.length(v.lo, v.hi)
        if self.base.toward_basepoint(v.hi) == v.lo:
            down = True
        elif self.base.toward_basepoint(v.lo) == v.hi:
            down = False
        else:
            down = 2 * v.index <= n
        if down:
            return OriginalVertex(v.lo) if v.index == 1 else v._replace(index=v.index - 1)
        return OriginalVertex(v.hi) if v.index == n - 1 else v._replace(index=v.index + 1)

    def norm(self, v) -> int:
        if self.base_is_tree:
            return len(self.path_to_basepoint(v)) - 1
        return len(self._bfs_path(v)) - 1

    def encode(self, v) -> bytes:
        if isinstance(v, OriginalVertex):
            return _TAG_ORIGINAL + self.base.encode(v.base)
        return (
            _TAG_INTERIOR
            + encoding.length_prefixed(self.base.encode(v.lo))
            + encoding.length_prefixed(self.base.encode(v.hi))
            + struct.pack(">I", v.index)
        )

    def decode(self, data: bytes):
        if data[:1] == _TAG_ORIGINAL:
            return OriginalVertex(self.base.decode(data[1:]))
        if data[:1] != _TAG_INTERIOR:
            raise VertexDecodeError("Unknown stretch vertex tag {!r}".format(data[:1]))
        lo_key, offset = encoding.read_length_prefixed(data, 1)
        hi_key, offset = encoding.read_length_prefixed(data, offset)
        if len(data) != offset + 4:
            raise VertexDecodeError("Malformed path-interior index")
        (index,) = struct.unpack_from(">I", data, offset)
        lo, hi = self.base.decode(lo_key), self.base.decode(hi_key)
        if lo_key >= hi_key or hi not in self.base.neighbors(lo):
            raise VertexDecodeError("Path-interior vertex does not name a base edge")
        if not 1 <= index <= self.length(lo, hi) - 1:
            raise VertexDecodeError(
                "Path index {} outside 1..{}".format(index, self.length(lo, hi) - 1)
            )
        return PathInteriorVertex(lo, hi, index)
