# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
"""
Sampling of Galton-Watson plane trees and the statistical checks built on them.

Every sampler draws from ``numpy.random.Generator(PCG64(seed))`` and trial i
of an experiment uses ``derive_seed(master_seed, i, b"gw")``, so results
depend only on the master seed.
"""
import math
from collections import Counter
from typing import Dict, List, Optional, Sequence, Union

import numpy as np
from numpy.random import PCG64, Generator
from scipy.stats import chi2_contingency

from anchorsim import config, logger
from anchorsim.common.prf import derive_seed
from anchorsim.common.stats import linear_fit, proportion_ci
from anchorsim.graph.core.schemas import ConstantLaw, GeometricLaw
from anchorsim.gw.core.offspring import backbone_decompose
from anchorsim.gw.core.schemas import (
    BackboneDecomposition,
    ExtinctionEstimate,
    OffspringDistribution,
    PlaneTree,
    Shape,
    ShapeComparison,
    SizeDistribution,
    SizeTail,
)
from anchorsim.gw.errors import BranchingError

log = logger.get_logger(__name__)

_DOMAIN = b"gw"


def _rng(seed: int) -> Generator:
    return Generator(PCG64(seed))


def _trial_seed(master_seed: int, index: int) -> int:
    return derive_seed(master_seed, index, _DOMAIN)


def _grow(
    dist: OffspringDistribution,
    rng: Generator,
    max_vertices: Optional[int] = None,
    max_depth: Optional[int] = None,
) -> PlaneTree:
    """Generation by generation; the budget is spent in breadth-first order."""
    budget = max_vertices or config.GW_TRUNCATION_BUDGET
    counts: List[int] = []
    generation = 1
    generated = 1
    depth = 0
    while generation:
        if max_depth is not None and depth == max_depth:
            counts.extend([0] * generation)
            return PlaneTree(child_counts=tuple(counts), truncated=True, frontier=generation)
        offspring = dist.sample(rng.random(generation))
        total = int(offspring.sum())
        if generated + total > budget:
            room = budget - generated
            before = np.cumsum(offspring) - offspring
            clipped = np.minimum(offspring, np.maximum(room - before, 0))
            kept = int(clipped.sum())
            counts.extend(int(k) for k in clipped)
            counts.extend([0] * kept)
            return PlaneTree(child_counts=tuple(counts), truncated=True, frontier=kept)
        counts.extend(int(k) for k in offspring)
        generated += total
        generation = total
        depth += 1
    return PlaneTree(child_counts=tuple(counts), truncated=False)


def sample_tree(
    dist: OffspringDistribution, seed: int, max_vertices: Optional[int] = None
) -> PlaneTree:
    """Breadth-first GW(dist) tree, exact when it has at most ``max_vertices`` vertices."""
    return _grow(dist, _rng(seed), max_vertices)


def extinction_frequency(
    dist: OffspringDistribution, trials: int, master_seed: int = 0, max_vertices: int = 1000
) -> ExtinctionEstimate:
    """Fraction of sampled trees that die out before reaching ``max_vertices`` vertices."""
    extinct = sum(
        not sample_tree(dist, _trial_seed(master_seed, i), max_vertices).truncated
        for i in range(trials)
    )
    freq, ci = proportion_ci(extinct, trials)
    return ExtinctionEstimate(
        trials=trials, extinct=extinct, frequency=freq if trials else 0.0, ci=ci
    )


def _bush(decomposition: BackboneDecomposition) -> OffspringDistribution:
    if decomposition.bush_law is None:
        err_msg = "Extinction probability is 0, there are no finite trees to condition on"
        log.error(err_msg)
        raise BranchingError(err_msg)
    return OffspringDistribution(probs=tuple(decomposition.bush_law))


def conditioned_finite_size_tail(
    dist: OffspringDistribution,
    trials: int,
    master_seed: int = 0,
    min_count: int = 50,
) -> SizeTail:
    """
    Empirical P(|T| >= s) for GW(dist) conditioned on extinction, sampled from
    the bush law, with a least-squares slope of log P(|T| >= s) over sizes
    reached by at least ``min_count`` trees.
    """
    bush = _bush(backbone_decompose(dist))
    sizes = np.array(
        [sample_tree(bush, _trial_seed(master_seed, i)).size for i in range(trials)], dtype=int
    )
    if trials == 0:
        return SizeTail(sizes=[], tail=[], trials=0)
    top = int(sizes.max())
    support = np.arange(1, top + 1)
    at_least = np.array([(sizes >= s).sum() for s in support])
    tail = at_least / trials

    slope = slope_ci = None
    fit_mask = (at_least >= min_count) & (at_least < trials)
    if np.unique(tail[fit_mask]).size >= 3:
        fit = linear_fit(support[fit_mask], np.log(tail[fit_mask]))
        slope, slope_ci = fit.slope, (fit.ci_low, fit.ci_high)
    return SizeTail(
        sizes=[int(s) for s in support],
        tail=[float(t) for t in tail],
        slope=slope,
        slope_ci=slope_ci,
        trials=trials,
    )


def sample_backbone_tree(
    decomposition: BackboneDecomposition, seed: int, depth: int
) -> PlaneTree:
    """Backbone (leafless) tree to the given depth; the last level is the frontier."""
    law = OffspringDistribution(probs=tuple(decomposition.backbone_law))
    return _grow(law, _rng(seed), max_depth=depth)


def _draw(law: OffspringDistribution, rng: Generator) -> int:
    return law.quantile(rng.random())


def _bush_shape(bush: OffspringDistribution, rng: Generator, level: int, depth: int) -> Shape:
    if level == depth:
        return ()
    k = _draw(bush, rng)
    return tuple(_bush_shape(bush, rng, level + 1, depth) for _ in range(k))


def sample_reconstructed_shape(
    decomposition: BackboneDecomposition, seed: int, depth: int
) -> Shape:
    """
    Depth-truncated shape of a tree conditioned on survival, rebuilt from its
    backbone: a backbone vertex gets Y children from the backbone law, each
    declared open with probability 1 - q; an assignment with no open child is
    discarded and redrawn. Open children are backbone vertices, closed ones
    root independent bushes.
    """
    rng = _rng(seed)
    backbone = OffspringDistribution(probs=tuple(decomposition.backbone_law))
    q = decomposition.extinction
    bush = OffspringDistribution(probs=tuple(decomposition.bush_law)) if q > 0 else None

    def node(level: int) -> Shape:
        if level == depth:
            return ()
        k = _draw(backbone, rng)
        while True:
            is_open = rng.random(k) >= q
            if is_open.any():
                break
        return tuple(
            node(level + 1) if o else _bush_shape(bush, rng, level + 1, depth) for o in is_open
        )

    return node(0)


def sample_stretch_view_shape(
    reduced: OffspringDistribution,
    law: Union[ConstantLaw, GeometricLaw],
    seed: int,
    depth: int,
) -> Shape:
    """
    Depth-truncated shape of the law-stretch of GW(reduced): every edge becomes a
    chain of single-child vertices, and the root sits on a stem of L - 1 of them.
    """
    rng = _rng(seed)

    def chain_length() -> int:
        return law.quantile(rng.random())

    def node(level: int, chain: int) -> Shape:
        if level == depth:
            return ()
        if chain > 0:
            return (node(level + 1, chain - 1),)
        k = _draw(reduced, rng)
        return tuple(node(level + 1, chain_length() - 1) for _ in range(k))

    return node(0, chain_length() - 1)


def depth_shape(tree: PlaneTree, depth: int) -> Shape:
    return tree.depth_shape(depth)


def surviving_shapes(
    dist: OffspringDistribution,
    trials: int,
    depth: int,
    master_seed: int = 0,
    max_vertices: int = 2000,
) -> List[Shape]:
    """Depth shapes of GW(dist) trees that reach ``max_vertices`` (taken as surviving)."""
    shapes = []
    for i in range(trials):
        tree = sample_tree(dist, _trial_seed(master_seed, i), max_vertices)
        if tree.truncated:
            shapes.append(tree.depth_shape(depth))
    return shapes


def compare_shapes(
    first: Sequence[Shape], second: Sequence[Shape], min_count: int = 20
) -> ShapeComparison:
    """
    Chi-square test that two shape samples share a distribution. Shapes seen
    fewer than ``min_count`` times overall are pooled into one category.
    """
    a, b = Counter(first), Counter(second)
    totals = a + b
    common = sorted((s for s, c in totals.items() if c >= min_count), key=repr)
    rare = [s for s in totals if totals[s] < min_count]
    rows = [[a[s] for s in common], [b[s] for s in common]]
    pooled = (sum(a[s] for s in rare), sum(b[s] for s in rare))
    if pooled[0] + pooled[1] > 0:
        rows[0].append(pooled[0])
        rows[1].append(pooled[1])
    table = np.array(rows)
    if table.shape[1] < 2:
        return ShapeComparison(statistic=0.0, pvalue=1.0, dof=0, categories=table.shape[1])
    statistic, pvalue, dof, _ = chi2_contingency(table)
    return ShapeComparison(
        statistic=float(statistic), pvalue=float(pvalue), dof=int(dof), categories=table.shape[1]
    )


def _frequencies(sizes: Sequence[int], kept: int, max_size: int) -> Dict[int, float]:
    counts = Counter(s for s in sizes if s <= max_size)
    return {s: counts[s] / kept for s in sorted(counts)} if kept else {}


def rejection_size_distribution(
    dist: OffspringDistribution,
    trials: int,
    master_seed: int = 0,
    max_size: int = 20,
    max_vertices: int = 1000,
) -> SizeDistribution:
    """Size law of GW(dist) trees that die out; trees reaching ``max_vertices`` are rejected."""
    sizes = []
    for i in range(trials):
        tree = sample_tree(dist, _trial_seed(master_seed, i), max_vertices)
        if not tree.truncated:
            sizes.append(tree.size)
    return SizeDistribution(
        trials=trials, kept=len(sizes), frequencies=_frequencies(sizes, len(sizes), max_size)
    )


def bush_size_distribution(
    dist: OffspringDistribution, trials: int, master_seed: int = 0, max_size: int = 20
) -> SizeDistribution:
    """Size law of trees sampled directly from the bush (extinction-conditioned) law."""
    bush = _bush(backbone_decompose(dist))
    sizes = [sample_tree(bush, _trial_seed(master_seed, i)).size for i in range(trials)]
    return SizeDistribution(
        trials=trials, kept=trials, frequencies=_frequencies(sizes, trials, max_size)
    )


def total_variation(first: Dict[int, float], second: Dict[int, float]) -> float:
    keys = set(first) | set(second)
    return 0.5 * math.fsum(abs(first.get(k, 0.0) - second.get(k, 0.0)) for k in keys)
