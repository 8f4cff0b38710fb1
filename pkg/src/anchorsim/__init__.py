# -*- coding: utf-8 -*-
from anchorsim.common.sdk import Sdk

__all__ = ["Sdk"]
