# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
import math
from typing import List, Tuple, Union

from anchorsim import config, logger
from anchorsim.graph.core.schemas import ConstantLaw, GeometricLaw
from anchorsim.gw.core.schemas import BackboneDecomposition, OffspringDistribution
from anchorsim.gw.errors import BranchingError, NotSupercriticalError

log = logger.get_logger(__name__)

MAX_ITERATIONS = 100_000


def extinction_iterates(
    dist: OffspringDistribution, tol: float = None, max_iterations: int = MAX_ITERATIONS
) -> List[float]:
    """
    Monotone iteration s_0 = 0, s_{n+1} = f(s_n), stopped once a step is below
    ``tol``. The sequence is nondecreasing and bounded by the extinction
    probability.
    """
    tol = tol or config.DEFAULT_TOLERANCE
    if tol <= 0:
        raise BranchingError("Tolerance must be > 0, got {}".format(tol))
    iterates = [0.0]
    s = 0.0
    for _ in range(max_iterations):
        nxt = min(dist.pgf(s), 1.0)
        if nxt < s:
            err_msg = "Extinction iteration decreased from {!r} to {!r}".format(s, nxt)
            log.error(err_msg)
            raise BranchingError(err_msg)
        iterates.append(nxt)
        if nxt - s < tol:
            return iterates
        s = nxt
    log.warning(f"Extinction iteration did not settle within {max_iterations} steps")
    return iterates


def extinction_probability(dist: OffspringDistribution, tol: float = None) -> float:
    """Smallest fixed point of the generating function on [0, 1]."""
    if dist.p(1) == 1.0:
        return 0.0
    if not dist.supercritical:
        return 1.0
    return extinction_iterates(dist, tol)[-1]


def _normalized(weights: List[float]) -> List[float]:
    total = math.fsum(weights)
    return [w / total for w in weights]


def backbone_decompose(dist: OffspringDistribution, tol: float = None) -> BackboneDecomposition:
    q = extinction_probability(dist, tol)
    if q >= 1.0:
        err_msg = "Offspring law with mean {:.6g} has no infinite backbone".format(dist.mean)
        log.error(err_msg)
        raise NotSupercriticalError(err_msg)

    probs = dist.probs
    backbone = _normalized([p * (1.0 - q**k) / (1.0 - q) for k, p in enumerate(probs)])
    bush = _normalized([p * q ** (k - 1) for k, p in enumerate(probs)]) if q > 0 else None
    # Children with an infinite line of descent, given at least one exists.
    survivors = [0.0] * len(probs)
    for k, p in enumerate(probs):
        for j in range(1, k + 1):
            survivors[j] += p * math.comb(k, j) * (1.0 - q) ** j * q ** (k - j)
    return BackboneDecomposition(
        extinction=q,
        backbone_law=backbone,
        bush_law=bush,
        open_children_law=_normalized(survivors),
        gap_parameter=1.0 - q,
    )


def geometric_stretch_view(
    dist: OffspringDistribution,
) -> Tuple[OffspringDistribution, Union[ConstantLaw, GeometricLaw]]:
    """
    Split a leafless law into the law of branching vertices and the length law
    of the single-child chains between them.

    Returns (p', nu) with p'_k = p_k / (1 - p_1) for k >= 2 and nu the geometric
    law on {1, 2, ...} of chain lengths, P(L = l) = p_1^(l-1) (1 - p_1).
    """
    if dist.p(0) > 0:
        err_msg = "Stretch view needs p_0 = 0, got p_0 = {}".format(dist.p(0))
        log.error(err_msg)
        raise BranchingError(err_msg)
    p1 = dist.p(1)
    if p1 == 0.0:
        return dist, ConstantLaw(length=1)
    if p1 >= 1.0:
        raise BranchingError("Law with p_1 = 1 has no branching vertices")
    reduced = [0.0 if k == 1 else p / (1.0 - p1) for k, p in enumerate(dist.probs)]
    return (
        OffspringDistribution(probs=tuple(_normalized(reduced))),
        GeometricLaw(success=1.0 - p1),
    )
