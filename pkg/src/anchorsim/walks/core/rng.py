# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
import numpy as np
from numpy.random import PCG64, Generator


class ChoiceStream:
    """
    Sequential uniform choices for one walk trajectory.

    Uniforms are drawn from ``Generator(PCG64(seed))`` in blocks, so the
    sequence of choices depends only on the seed and the block size does not
    change it.
    """

    def __init__(self, seed: int, block: int = 8192):
        self.seed = seed
        self._rng = Generator(PCG64(seed))
        self._block = block
        self._buffer = np.empty(0)
        self._pos = 0

    def uniform(self) -> float:
        if self._pos == len(self._buffer):
            self._buffer = self._rng.random(self._block)
            self._pos = 0
        u = self._buffer[self._pos]
        self._pos += 1
        return float(u)

    def choice(self, k: int) -> int:
        """Uniform index in 0..k-1."""
        return min(int(self.uniform() * k), k - 1)
