# -*- coding: utf-8 -*-
from anchorsim.errors import AnchorsimError


class WalkError(AnchorsimError):
    pass


class NotInClusterError(WalkError):
    """Raised when the start vertex does not lie in a large open cluster."""

    pass


class IsolatedVertexError(WalkError):
    pass
