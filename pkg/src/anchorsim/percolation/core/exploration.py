# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
"""
Ordered cluster-growth exploration of Bernoulli percolation clusters.

Vertices are processed first-in first-out in discovery order; the edges of a
vertex are examined in EdgeKey order. An examined edge joins the cluster iff
it is open, so ``trace`` is the sequence of outcomes Y_1, Y_2, ... and on a
Finite report ``sum(trace) == |V(H)| - 1``.
"""
import math
from collections import deque
from typing import Any, Dict, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from anchorsim import logger
from anchorsim.common.parallel import run_trials
from anchorsim.common.prf import derive_seed
from anchorsim.common.stats import linear_fit, proportion_ci
from anchorsim.graph.core import encoding
from anchorsim.graph.core.base_graph_oracle import BaseGraphOracle
from anchorsim.graph.core.common import as_vertex
from anchorsim.graph.core.schemas import EdgeKey, FiniteGraph
from anchorsim.percolation.core.configuration import (
    _require_mode,
    bond_uniform,
    site_uniform,
    token_open,
)
from anchorsim.percolation.core.schemas import (
    BoundaryHistogram,
    ClusterReport,
    ExplorationStatus,
    PercolationConfig,
    PercolationMode,
    SurvivalCurve,
    SurvivalPoint,
)
from anchorsim.percolation.errors import PercolationError

log = logger.get_logger(__name__)


def _check_budget(vertex_budget: int):
    if vertex_budget is None or vertex_budget < 1:
        err_msg = "Vertex budget must be a positive integer, got {!r}".format(vertex_budget)
        log.error(err_msg)
        raise PercolationError(err_msg)


def explore_cluster(
    oracle: BaseGraphOracle,
    cfg: PercolationConfig,
    start: Any = None,
    vertex_budget: int = 100_000,
) -> ClusterReport:
    """Grow the open bond cluster of ``start`` (default: the basepoint)."""
    _require_mode(cfg, PercolationMode.BOND)
    _check_budget(vertex_budget)
    start = oracle.basepoint if start is None else as_vertex(oracle, start)
    seed, p = cfg.seed, cfg.p

    inside = {start}
    order = [start]
    queue = deque([start])
    trace = bytearray()
    rejected = []
    status = ExplorationStatus.FINITE
    while queue and status == ExplorationStatus.FINITE:
        v = queue.popleft()
        frontier = [u for u in oracle.neighbors(v) if u not in inside]
        # For a fixed endpoint v, EdgeKey order is the order of the other endpoint's key.
        frontier.sort(key=oracle.encode)
        for u in frontier:
            if bond_uniform(seed, oracle.edge_token(v, u)) < p:
                if len(inside) >= vertex_budget:
                    status = ExplorationStatus.BUDGET_EXCEEDED
                    break
                trace.append(1)
                inside.add(u)
                order.append(u)
                queue.append(u)
            else:
                trace.append(0)
                rejected.append(u)

    accepted = len(order) - 1
    if status == ExplorationStatus.BUDGET_EXCEEDED:
        log.debug(f"Exploration hit the budget of {vertex_budget} vertices")
        return ClusterReport(
            status=status,
            vertices=tuple(order),
            trace=bytes(trace),
            accepted_count=accepted,
            rejected_count=len(rejected),
            closed_boundary_count=None,
            internal_closed_count=sum(1 for u in rejected if u in inside),
            open_edge_count=None,
        )

    boundary = sum(1 for u in rejected if u not in inside)
    return ClusterReport(
        status=status,
        vertices=tuple(order),
        trace=bytes(trace),
        accepted_count=accepted,
        rejected_count=len(rejected),
        closed_boundary_count=boundary,
        internal_closed_count=len(rejected) - boundary,
        open_edge_count=_count_open_internal_edges(oracle, cfg, inside),
    )


def _count_open_internal_edges(oracle: BaseGraphOracle, cfg: PercolationConfig, inside) -> int:
    count = 0
    for v in inside:
        kv = oracle.encode(v)
        for u in oracle.neighbors(v):
            if u in inside and kv < oracle.encode(u):
                count += bond_uniform(cfg.seed, oracle.edge_token(v, u)) < cfg.p
    return count


def site_explore_cluster(
    oracle: BaseGraphOracle,
    cfg: PercolationConfig,
    start: Any = None,
    vertex_budget: int = 100_000,
) -> ClusterReport:
    """
    Vertex version of the growth process. A closed start gives an empty
    Finite cluster; ``closed_boundary_count`` is the number of closed
    vertices adjacent to the cluster.
    """
    _require_mode(cfg, PercolationMode.SITE)
    _check_budget(vertex_budget)
    start = oracle.basepoint if start is None else as_vertex(oracle, start)
    seed, p = cfg.seed, cfg.p

    if not site_uniform(seed, oracle.vertex_token(start)) < p:
        return ClusterReport(
            status=ExplorationStatus.FINITE,
            vertices=(),
            trace=b"",
            accepted_count=0,
            rejected_count=0,
            closed_boundary_count=0,
            internal_closed_count=0,
            open_edge_count=None,
            mode=PercolationMode.SITE,
        )

    examined = {start}
    order = [start]
    queue = deque([start])
    trace = bytearray()
    rejected = 0
    status = ExplorationStatus.FINITE
    while queue and status == ExplorationStatus.FINITE:
        v = queue.popleft()
        frontier = [u for u in oracle.neighbors(v) if u not in examined]
        frontier.sort(key=oracle.encode)
        for u in frontier:
            if site_uniform(seed, oracle.vertex_token(u)) < p:
                if len(order) >= vertex_budget:
                    status = ExplorationStatus.BUDGET_EXCEEDED
                    break
                examined.add(u)
                trace.append(1)
                order.append(u)
                queue.append(u)
            else:
                examined.add(u)
                trace.append(0)
                rejected += 1

    finite = status == ExplorationStatus.FINITE
    return ClusterReport(
        status=status,
        vertices=tuple(order),
        trace=bytes(trace),
        accepted_count=len(order) - 1,
        rejected_count=rejected,
        closed_boundary_count=rejected if finite else None,
        internal_closed_count=0,
        open_edge_count=None,
        mode=PercolationMode.SITE,
    )


def explore(
    oracle: BaseGraphOracle,
    cfg: PercolationConfig,
    start: Any = None,
    vertex_budget: int = 100_000,
) -> ClusterReport:
    """Dispatch on the configuration mode."""
    if cfg.mode == PercolationMode.SITE:
        return site_explore_cluster(oracle, cfg, start, vertex_budget)
    return explore_cluster(oracle, cfg, start, vertex_budget)


def event_inclusion_holds(report: ClusterReport, h: float) -> bool:
    """
    On a Finite report with n > v*h, some N >= n satisfies
    Y_1 + ... + Y_N <= N / (1 + h). Vacuously true otherwise.
    """
    if not report.finite or not report.vertices:
        return True
    n = report.closed_boundary_count
    if n <= report.size * h:
        return True
    total = 0
    for N, y in enumerate(report.trace, start=1):
        total += y
        if N >= n and total * (1 + h) <= N:
            return True
    return False


def open_component(
    graph: FiniteGraph, cfg: PercolationConfig, start: Optional[int] = None
) -> frozenset:
    """
    Brute-force open cluster of ``start`` inside an explicit graph: the
    connected component of start in the subgraph of open edges (bond) or of
    open vertices (site). Returns graph vertices.
    """
    start = graph.root if start is None else start
    g = nx.Graph()
    if cfg.mode == PercolationMode.BOND:
        g.add_nodes_from(range(len(graph)))
        for i, j in graph.edges():
            if token_open(cfg, encoding.edge_token(EdgeKey.of(graph.keys[i], graph.keys[j]))):
                g.add_edge(i, j)
    else:
        is_open = [token_open(cfg, encoding.vertex_token(k)) for k in graph.keys]
        if not is_open[start]:
            return frozenset()
        g.add_nodes_from(i for i in range(len(graph)) if is_open[i])
        g.add_edges_from((i, j) for i, j in graph.edges() if is_open[i] and is_open[j])
    return frozenset(graph.vertices[i] for i in nx.node_connected_component(g, start))


def expected_cluster_size_tree(
    b: int, p: float, mode: PercolationMode = PercolationMode.BOND, tol: float = 1e-13
) -> float:
    """
    E|H| at the basepoint of the (b+1)-regular tree, from the one-step
    recursion m = 1 + b p m for the expected size of a branch.
    """
    if b * p >= 1:
        return math.inf
    m, prev = 1.0, 0.0
    while abs(m - prev) > tol * m:
        prev, m = m, 1.0 + b * p * m
    if mode == PercolationMode.BOND:
        return 1.0 + (b + 1) * p * m
    return p * (1.0 + (b + 1) * p * m)


def _cluster_trial(payload: Tuple) -> Tuple[bool, int, Optional[int]]:
    oracle, cfg, start, budget = payload
    report = explore(oracle, cfg, start, budget)
    return report.finite, report.size, report.closed_boundary_count


def _trial_payloads(oracle, cfg, start, budget, trials, master_seed):
    for i in range(trials):
        yield oracle, cfg.with_seed(derive_seed(master_seed, i)), start, budget


def boundary_tail_histogram(
    oracle: BaseGraphOracle,
    p: float,
    trials: int,
    budget: int,
    master_seed: int = 0,
    start: Any = None,
    workers: int = 1,
) -> BoundaryHistogram:
    """Histogram of the closed boundary |boundary of V(H)| over Finite bond trials."""
    if not 0.0 <= p <= 1.0:
        raise PercolationError("p must lie in [0, 1], got {}".format(p))
    cfg = PercolationConfig(p=p, mode=PercolationMode.BOND)
    payloads = _trial_payloads(oracle, cfg, start, budget, trials, master_seed)
    results = run_trials(_cluster_trial, payloads, workers)
    counts: Dict[int, int] = {}
    survived = 0
    for finite, _, boundary in results:
        if finite:
            counts[boundary] = counts.get(boundary, 0) + 1
        else:
            survived += 1
    return BoundaryHistogram(trials=trials, survived=survived, counts=dict(sorted(counts.items())))


def fit_boundary_tail(histogram: BoundaryHistogram, min_count: int = 50):
    """Log-linear fit of the histogram over boundary sizes with at least ``min_count`` trials."""
    points = [(n, c) for n, c in sorted(histogram.counts.items()) if c >= min_count]
    if len(points) < 2:
        raise PercolationError(
            "Need two boundary sizes with >= {} trials to fit a slope, got {}".format(
                min_count, len(points)
            )
        )
    return linear_fit([n for n, _ in points], [math.log(c / histogram.trials) for _, c in points])


def survival_curve(
    oracle: BaseGraphOracle,
    p_grid: Sequence[float],
    trials: int,
    budget: int,
    master_seed: int = 0,
    mode: PercolationMode = PercolationMode.BOND,
    start: Any = None,
    workers: int = 1,
) -> SurvivalCurve:
    """
    Fraction of trials whose exploration exceeds ``budget`` at each p.

    Trial i uses the same seed at every p, so the curve is monotone in p
    trial by trial.
    """
    points = []
    for p in p_grid:
        cfg = PercolationConfig(p=p, mode=mode)
        payloads = _trial_payloads(oracle, cfg, start, budget, trials, master_seed)
        results = run_trials(_cluster_trial, payloads, workers)
        survived = sum(1 for finite, _, _ in results if not finite)
        finite_sizes = [size for finite, size, _ in results if finite]
        freq, ci = proportion_ci(survived, trials)
        points.append(
            SurvivalPoint(
                p=p,
                trials=trials,
                survived=survived,
                frequency=freq if trials else 0.0,
                ci=ci,
                mean_finite_size=float(np.mean(finite_sizes)) if finite_sizes else None,
            )
        )
        log.debug(f"p={p}: survival {survived}/{trials}")
    return SurvivalCurve(mode=mode, budget=budget, points=points)


def estimate_threshold(curve: SurvivalCurve, upper: float = 0.5) -> float:
    """
    Onset of survival: the zero of the line fitted to the curve over points
    with 0 < frequency < ``upper``.
    """
    pts = [(pt.p, pt.frequency) for pt in curve.points if 0.0 < pt.frequency < upper]
    if len(pts) < 2:
        raise PercolationError(
            "Need two grid points with 0 < survival < {} to locate the threshold".format(upper)
        )
    fit = linear_fit([p for p, _ in pts], [f for _, f in pts])
    if fit.slope <= 0:
        raise PercolationError("Survival curve is not increasing over the fitted points")
    return -fit.intercept / fit.slope
