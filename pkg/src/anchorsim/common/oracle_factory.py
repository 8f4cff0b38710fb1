# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
from typing import Any, Dict

from anchorsim.graph.adapters.gw_tree.oracle import GraphOracle as GWTreeOracle
from anchorsim.graph.adapters.lamplighter.oracle import GraphOracle as LamplighterOracle
from anchorsim.graph.adapters.lattice.oracle import GraphOracle as LatticeOracle
from anchorsim.graph.adapters.regular_tree.oracle import GraphOracle as RegularTreeOracle
from anchorsim.graph.adapters.rooted_tree.oracle import GraphOracle as RootedTreeOracle
from anchorsim.graph.adapters.stretch.oracle import GraphOracle as StretchOracle
from anchorsim.graph.core.base_graph_oracle import BaseGraphOracle
from anchorsim.graph.core.finite_group import FiniteGroupGraph
from anchorsim.graph.core.schemas import StretchDescriptor
from anchorsim.gw.core.schemas import OffspringDistribution


def _group_from(spec: Any) -> FiniteGroupGraph:
    if isinstance(spec, FiniteGroupGraph):
        return spec
    if isinstance(spec, str):
        return FiniteGroupGraph.parse(spec)
    return FiniteGroupGraph.build(**spec)


def _stretch_oracle(base: Dict, law: Dict, seed: int = 0) -> StretchOracle:
    descriptor = StretchDescriptor.model_validate({"law": law, "seed": seed})
    return StretchOracle(base=create_oracle(base), descriptor=descriptor)


def _lamplighter_oracle(base: Dict, group: Any = "z2") -> LamplighterOracle:
    return LamplighterOracle(base=create_oracle(base), group=_group_from(group))


def _gw_oracle(probs, seed: int = 0, truncation_budget: int = None) -> GWTreeOracle:
    if isinstance(probs, str):
        offspring = OffspringDistribution.parse(probs)
    else:
        offspring = OffspringDistribution(probs=tuple(probs))
    return GWTreeOracle(offspring=offspring, seed=seed, truncation_budget=truncation_budget)


_graph_factory = {
    "lattice": lambda **kw: LatticeOracle(**kw),
    "tree": lambda **kw: RegularTreeOracle(**kw),
    "rooted": lambda **kw: RootedTreeOracle(**kw),
    "binary-rooted": lambda **kw: RootedTreeOracle(b=2, **kw),
    "gw": lambda **kw: _gw_oracle(**kw),
    "stretch": lambda **kw: _stretch_oracle(**kw),
    "lamplighter": lambda **kw: _lamplighter_oracle(**kw),
}


def create_oracle(spec: Dict[str, Any]) -> BaseGraphOracle:
    """Build an oracle from a plain dict spec such as ``{"family": "lattice", "d": 2}``."""
    spec = dict(spec)
    try:
        family = spec.pop("family")
    except KeyError:
        raise ValueError(f"Missing 'family' in graph spec. Available: {list(_graph_factory)}")
    try:
        builder = _graph_factory[family]
    except KeyError:
        raise ValueError(f"Invalid graph family '{family}'. Available: {list(_graph_factory)}")
    return builder(**spec)


def available_families():
    return list(_graph_factory)
