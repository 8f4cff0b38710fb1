#!/usr/bin/env python3
# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
from abc import ABC, abstractmethod
from collections import deque
from functools import wraps
from typing import Any, List

from anchorsim import config, logger
from anchorsim.graph.adapters.errors import (
    BudgetExceededError,
    CapabilityNotSupported,
    FamilyMismatchError,
)
from anchorsim.graph.core import encoding
from anchorsim.graph.core.schemas import EdgeKey, FamilyTag, VertexKey

log = logger.get_logger(__name__)


def requires_capability(feature: str):
    def decorator(func):
        @wraps(func)
        def wrapper(self, *args, **kwargs):
            if feature not in self.capabilities:
                # Family name is derived from the module
                module_path = self.__module__.split(".")
                try:
                    family_name = module_path[module_path.index("adapters") + 1]
                except (ValueError, IndexError):
                    family_name = self.__class__.__name__

                raise CapabilityNotSupported(
                    f"Functionality '{feature}' is not supported by {family_name}"
                )
            return func(self, *args, **kwargs)

        return wrapper

    return decorator


class BaseGraphOracle(ABC):
    """
    Immutable neighbor oracle of a (possibly infinite) graph.

    Oracles work on structured vertices (tuples, NamedTuples, ints) and expose
    ``encode``/``decode`` for the canonical VertexKey bytes. All randomness of a
    family is a pure function of its seed and the vertex or edge key, so an
    oracle can be shared by concurrent tasks.

    Every family guarantees: neighbors(v) is finite, duplicate-free, never
    contains v, and u in neighbors(v) iff v in neighbors(u).
    """

    family: FamilyTag
    capabilities: set = set()
    basepoint: Any

    @abstractmethod
    def neighbors(self, v) -> List[Any]:
        pass

    def degree(self, v) -> int:
        return len(self.neighbors(v))

    @property
    @abstractmethod
    def max_degree(self) -> int:
        pass

    @abstractmethod
    def encode(self, v) -> bytes:
        pass

    @abstractmethod
    def decode(self, data: bytes):
        pass

    def key(self, v) -> VertexKey:
        return VertexKey(self.encode(v), self.family)

    def from_key(self, key: VertexKey):
        if key.family_tag != self.family:
            raise FamilyMismatchError(
                f"Key of family {FamilyTag(key.family_tag).name} given to a "
                f"{self.family.name} oracle"
            )
        return self.decode(key.data)

    def edge_key(self, u, v) -> EdgeKey:
        return EdgeKey.of(self.key(u), self.key(v))

    def edge_token(self, u, v) -> bytes:
        return encoding.edge_token(self.edge_key(u, v))

    def vertex_token(self, v) -> bytes:
        return encoding.vertex_token(self.key(v))

    def toward_basepoint(self, v):
        """Next vertex on a fixed shortest path from v to the basepoint (None at the basepoint)."""
        path = self._bfs_path(v)
        return path[1] if len(path) > 1 else None

    def path_to_basepoint(self, v) -> List[Any]:
        path = [v]
        step = self.toward_basepoint(v)
        while step is not None:
            path.append(step)
            step = self.toward_basepoint(step)
        return path

    def norm(self, v) -> int:
        """Graph distance |v|_G from the basepoint."""
        return len(self.path_to_basepoint(v)) - 1

    def _bfs_path(self, v, budget: int = None) -> List[Any]:
        budget = budget or config.BALL_VERTEX_BUDGET
        parent = {self.basepoint: None}
        queue = deque([self.basepoint])
        while queue:
            x = queue.popleft()
            if x == v:
                path = [x]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return path
            for y in self.neighbors(x):
                if y not in parent:
                    parent[y] = x
                    if len(parent) > budget:
                        err_msg = "Basepoint distance search for {!r} did not terminate".format(v)
                        log.error(err_msg)
                        raise BudgetExceededError("BALL_VERTEX_BUDGET", budget, err_msg)
                    queue.append(y)
        raise FamilyMismatchError("Vertex {!r} is not connected to the basepoint".format(v))
