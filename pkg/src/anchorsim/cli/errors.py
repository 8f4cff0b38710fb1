# -*- coding: utf-8 -*-
from anchorsim.errors import AnchorsimError


class ExperimentError(AnchorsimError):
    pass


class InvalidCombinationError(ExperimentError):
    """Options that are valid one by one but cannot be used together."""

    pass


class ArtifactError(ExperimentError):
    pass
