# -*- coding: utf-8 -*-
test_cases = [
    {"name": "tree-b2", "graph": {"family": "tree", "b": 2}},
    {"name": "z2", "graph": {"family": "lattice", "d": 2}},
    {
        "name": "lamplighter-z1-z2",
        "graph": {"family": "lamplighter", "base": {"family": "lattice", "d": 1}, "group": "z2"},
    },
]

T2 = {"family": "tree", "b": 2}
Z2 = {"family": "lattice", "d": 2}
