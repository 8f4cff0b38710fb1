# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
from functools import lru_cache
from typing import List

from anchorsim import logger
from anchorsim.graph.adapters.errors import VertexDecodeError
from anchorsim.graph.core import encoding
from anchorsim.graph.core.base_graph_oracle import BaseGraphOracle, requires_capability
from anchorsim.graph.core.finite_group import FiniteGroupGraph
from anchorsim.graph.core.schemas import FamilyTag, LampState

log = logger.get_logger(__name__)


class GraphOracle(BaseGraphOracle):
    """
    Lamplighter product W = G x| (sum over G of F).

    Vertices are LampState(marker, lamps). The neighbors of (m, eta) are the
    marker moves (u, eta) for u adjacent to m in G, listed first, followed by
    the lamp changes at m: eta(m) replaced by eta(m)*g for each generator g.
    Every vertex has degree deg_G(m) + |generators|.
    """

    family = FamilyTag.LAMPLIGHTER
    capabilities = {"lamps"}

    def __init__(self, base: BaseGraphOracle, group: FiniteGroupGraph):
        self.base = base
        self.group = group
        self.basepoint = LampState(base.basepoint, frozenset())
        self.site_key = lru_cache(maxsize=1 << 16)(self._site_key)
        log.debug(f"Initialized lamplighter over {base!r} with |F|={group.order}")

    def __repr__(self):
        return f"LamplighterOracle(base={self.base!r}, order={self.group.order})"

    def __getstate__(self):
        state = self.__dict__.copy()
        del state["site_key"]
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self.site_key = lru_cache(maxsize=1 << 16)(self._site_key)

    def _site_key(self, x) -> bytes:
        return self.base.encode(x)

    @staticmethod
    def lamp_at(v: LampState, site) -> int:
        for x, value in v.lamps:
            if x == site:
                return value
        return 0

    def neighbors(self, v: LampState) -> List[LampState]:
        m, lamps = v
        out = [LampState(u, lamps) for u in self.base.neighbors(m)]
        current = self.lamp_at(v, m)
        rest = lamps - {(m, current)} if current else lamps
        for g in self.group.generators:
            value = self.group.mul(current, g)
            out.append(LampState(m, rest | {(m, value)} if value else rest))
        return out

    def degree(self, v: LampState) -> int:
        return self.base.degree(v.marker) + self.group.degree

    @property
    def max_degree(self) -> int:
        return self.base.max_degree + self.group.degree

    def encode(self, v: LampState) -> bytes:
        entries = [(self.site_key(x), value) for x, value in v.lamps]
        return encoding.pack_lamp_key(self.site_key(v.marker), entries)

    def decode(self, data: bytes) -> LampState:
        marker_key, entries = encoding.parse_lamp_key(data)
        lamps = []
        for site_key, value in entries:
            if value >= self.group.order:
                raise VertexDecodeError(
                    "Lamp value {} outside a group of order {}".format(value, self.group.order)
                )
            lamps.append((self.base.decode(site_key), value))
        return LampState(self.base.decode(marker_key), frozenset(lamps))

    def digest(self, v: LampState) -> int:
        digest = 0
        for x, value in v.lamps:
            digest ^= encoding.lamp_hash(self.site_key(x), value)
        return digest

    def edge_token(self, u: LampState, v: LampState) -> bytes:
        digest = self.digest(u)
        if u.marker != v.marker:
            return encoding.move_token(self.site_key(u.marker), self.site_key(v.marker), digest)
        m_key = self.site_key(u.marker)
        a = self.lamp_at(u, u.marker)
        b = self.lamp_at(v, v.marker)
        if a:
            digest ^= encoding.lamp_hash(m_key, a)
        return encoding.flip_token(m_key, a, b, digest)

    def vertex_token(self, v: LampState) -> bytes:
        return encoding.lamp_vertex_token(self.site_key(v.marker), self.digest(v))

    @requires_capability("lamps")
    def lamp_cost(self, v: LampState) -> int:
        """Sum over lit sites of the word length |eta(x)|_F."""
        return sum(self.group.norm(value) for _, value in v.lamps)
