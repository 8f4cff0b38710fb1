# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
from collections import deque
from functools import cached_property
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from anchorsim import logger
from anchorsim.graph.adapters.errors import InvalidGroupError

log = logger.get_logger(__name__)


class FiniteGroupGraph(BaseModel):
    """
    Cayley graph of a finite group F given by its multiplication table.

    Element 0 is the identity; ``table[a][b]`` is the product ab and the
    neighbors of x are x*g for g in ``generators`` (right multiplication).
    The generator set must be symmetric, must not contain the identity and
    must generate F.
    """

    model_config = ConfigDict(frozen=True)

    order: int
    table: Tuple[Tuple[int, ...], ...]
    generators: Tuple[int, ...]

    @model_validator(mode="after")
    def check_group(self):
        k = self.order
        if k < 1:
            raise ValueError("Group order must be positive, got {}".format(k))
        if len(self.table) != k or any(len(row) != k for row in self.table):
            raise ValueError("Multiplication table must be {0}x{0}".format(k))
        elements = set(range(k))
        for a, row in enumerate(self.table):
            if set(row) != elements:
                raise ValueError(
                    "Row {} of the table is not a permutation of 0..{}".format(a, k - 1)
                )
        if any(self.table[0][x] != x or self.table[x][0] != x for x in range(k)):
            raise ValueError("Element 0 must be the identity")
        if k <= 64:
            for a in range(k):
                for b in range(k):
                    ab = self.table[a][b]
                    for c in range(k):
                        if self.table[ab][c] != self.table[a][self.table[b][c]]:
                            raise ValueError(
                                "Table is not associative at ({}, {}, {})".format(a, b, c)
                            )
        gens = set(self.generators)
        if len(gens) != len(self.generators):
            raise ValueError("Generators must be distinct")
        if 0 in gens:
            raise ValueError("The identity cannot be a generator")
        if any(not 0 < g < k for g in gens):
            raise ValueError("Generator out of range 1..{}".format(k - 1))
        for g in gens:
            if self.inverse(g) not in gens:
                raise ValueError("Generator set is not symmetric: {} lacks its inverse".format(g))
        if any(n < 0 for n in self._bfs_norms()):
            raise ValueError("Generators do not generate the group")
        return self

    def _bfs_norms(self) -> Tuple[int, ...]:
        dist = [-1] * self.order
        dist[0] = 0
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for y in self.neighbors(x):
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return tuple(dist)

    @cached_property
    def norms(self) -> Tuple[int, ...]:
        return self._bfs_norms()

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self.table[a].index(0)

    def neighbors(self, x: int) -> List[int]:
        return [self.table[x][g] for g in self.generators]

    @property
    def degree(self) -> int:
        return len(self.generators)

    def norm(self, x: int) -> int:
        """Word length |x|_F: Cayley-graph distance from the identity."""
        return self.norms[x]

    @property
    def diameter(self) -> int:
        return max(self.norms)

    @classmethod
    def cyclic(cls, k: int, generators: Optional[Sequence[int]] = None) -> "FiniteGroupGraph":
        """Z_k with generators {1, k-1} by default ({1} for k = 2)."""
        table = tuple(tuple((a + b) % k for b in range(k)) for a in range(k))
        if generators is None:
            generators = sorted({1, k - 1}) if k > 1 else []
        return cls.build(order=k, table=table, generators=tuple(generators))

    @classmethod
    def build(cls, **kwargs) -> "FiniteGroupGraph":
        try:
            return cls(**kwargs)
        except ValidationError as e:
            err_msg = "Invalid finite group: {}".format(e.errors()[0]["msg"])
            log.error(err_msg)
            raise InvalidGroupError(err_msg) from e

    @classmethod
    def from_text(cls, text: str) -> "FiniteGroupGraph":
        """
        Parse the group file format: the order k on the first line, k lines of
        k integers (the table), then one line of generator indices.
        """
        lines = [line.split() for line in text.splitlines() if line.strip()]
        try:
            k = int(lines[0][0])
            table = tuple(tuple(int(x) for x in lines[1 + i]) for i in range(k))
            generators = tuple(int(x) for x in lines[1 + k])
        except (IndexError, ValueError) as e:
            err_msg = "Malformed group file: {}".format(e)
            log.error(err_msg)
            raise InvalidGroupError(err_msg) from e
        if len(lines) > k + 2:
            raise InvalidGroupError("Trailing lines after the generator line")
        return cls.build(order=k, table=table, generators=generators)

    @classmethod
    def from_file(cls, path) -> "FiniteGroupGraph":
        return cls.from_text(Path(path).read_text())

    @classmethod
    def parse(cls, spec: str) -> "FiniteGroupGraph":
        """``z<k>`` for a cyclic group, anything else is read as a group file."""
        if spec.lower().startswith("z") and spec[1:].isdigit():
            return cls.cyclic(int(spec[1:]))
        return cls.from_file(spec)
