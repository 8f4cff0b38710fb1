# -*- coding: utf-8 -*-
from anchorsim.errors import AnchorsimError


class PercolationError(AnchorsimError):
    pass


class ModeMismatchError(PercolationError):
    pass
