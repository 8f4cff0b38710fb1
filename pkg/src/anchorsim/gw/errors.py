# -*- coding: utf-8 -*-
from anchorsim.errors import AnchorsimError


class BranchingError(AnchorsimError):
    pass


class NotSupercriticalError(BranchingError):
    pass
