# -*- coding: utf-8 -*-
class AnchorsimError(Exception):
    pass
