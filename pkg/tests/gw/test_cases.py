# -*- coding: utf-8 -*-
# Offspring laws with closed-form extinction probabilities and decompositions
test_cases = [
    {
        "name": "binary-or-none",
        "law": "0.25,0,0.75",
        "extinction": 1 / 3,
        "backbone": [0.0, 0.0, 1.0],
        "bush": [0.75, 0.0, 0.25],
        "open_children": [0.0, 0.5, 0.5],
    },
    {
        "name": "mixed",
        "law": "0.2,0.3,0.5",
        "extinction": 0.4,
        "backbone": [0.0, 0.3, 0.7],
        "bush": [0.5, 0.3, 0.2],
        "open_children": [0.0, 0.7, 0.3],
    },
    {
        "name": "binary",
        "law": "0,0,1",
        "extinction": 0.0,
        "backbone": [0.0, 0.0, 1.0],
        "bush": None,
        "open_children": [0.0, 0.0, 1.0],
    },
]

BINARY_OR_NONE = "0.25,0,0.75"
LAZY_BINARY = "0,0.5,0.5"
