# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
"""
Cluster exploration tests.

The regular tree T_2 gives exact identities for every finite cluster:
|boundary| = |V(H)| + 2 and the trace holds |V(H)| - 1 open edges.
On Z^2 the exploration is compared with the open component computed by
networkx on an explicit ball.
"""
import math

import pytest

from anchorsim.common.prf import derive_seed
from anchorsim.common.sdk import Sdk as sdkclient
from anchorsim.graph.core.common import ball
from anchorsim.percolation.core.exploration import (
    boundary_tail_histogram,
    estimate_threshold,
    event_inclusion_holds,
    expected_cluster_size_tree,
    explore,
    explore_cluster,
    fit_boundary_tail,
    open_component,
    site_explore_cluster,
    survival_curve,
)
from anchorsim.percolation.core.schemas import (
    ExplorationStatus,
    PercolationConfig,
    PercolationMode,
    SurvivalCurve,
    SurvivalPoint,
)
from anchorsim.percolation.errors import ModeMismatchError, PercolationError
from tests.percolation.test_cases import T2, Z2

SITE = PercolationMode.SITE


@pytest.fixture(scope="module", name="tree")
def regular_tree():
    return sdkclient.create_oracle_from(T2)


def test_closed_configuration(tree):
    report = explore_cluster(tree, PercolationConfig(p=0.0))
    assert report.finite
    assert report.vertices == ((),)
    assert report.closed_boundary_count == 3
    assert report.trace == b"\x00\x00\x00"
    assert report.open_edge_count == 0


def test_open_finite_tree():
    oracle = sdkclient.create_oracle_from({"family": "rooted", "parents": [0, 0, 0, 1, 1]})
    report = explore_cluster(oracle, PercolationConfig(p=1.0))
    assert report.finite
    assert report.vertex_set() == frozenset(range(5))
    assert report.closed_boundary_count == 0
    assert report.trace == b"\x01" * 4
    assert report.vertices[0] == 0


def test_tree_identities(tree):
    finite = 0
    for seed in range(200):
        report = explore_cluster(tree, PercolationConfig(p=0.4, seed=seed), vertex_budget=10_000)
        if not report.finite:
            continue
        finite += 1
        assert report.closed_boundary_count == report.size + 2
        assert sum(report.trace) == report.size - 1
        assert report.examined_count == 2 * report.size + 1
        assert report.internal_closed_count == 0
        assert report.open_edge_count == report.size - 1
    assert finite > 150


def test_event_inclusion(tree):
    z2 = sdkclient.create_oracle_from(Z2)
    for seed in range(100):
        report = explore_cluster(tree, PercolationConfig(p=0.6, seed=seed), vertex_budget=2000)
        assert event_inclusion_holds(report, 1.0)
        report = explore_cluster(z2, PercolationConfig(p=0.45, seed=seed), vertex_budget=2000)
        assert event_inclusion_holds(report, 0.5)


def test_exploration_matches_open_component():
    z2 = sdkclient.create_oracle_from(Z2)
    radius = 12
    region = ball(z2, z2.basepoint, radius)
    compared = 0
    for seed in range(60):
        cfg = PercolationConfig(p=0.4, seed=seed)
        report = explore_cluster(z2, cfg, vertex_budget=10_000)
        if not report.finite or max(z2.norm(v) for v in report.vertices) >= radius:
            continue
        compared += 1
        assert open_component(region, cfg) == report.vertex_set()
    assert compared > 30


def test_site_exploration_matches_open_component():
    z2 = sdkclient.create_oracle_from(Z2)
    radius = 12
    region = ball(z2, z2.basepoint, radius)
    compared = 0
    for seed in range(60):
        cfg = PercolationConfig(p=0.5, mode=SITE, seed=seed)
        report = site_explore_cluster(z2, cfg, vertex_budget=10_000)
        if not report.finite or any(z2.norm(v) >= radius for v in report.vertices):
            continue
        compared += 1
        assert open_component(region, cfg) == report.vertex_set()
    assert compared > 30


def test_budget_exceeded(tree):
    report = explore_cluster(tree, PercolationConfig(p=1.0), vertex_budget=50)
    assert report.status == ExplorationStatus.BUDGET_EXCEEDED
    assert report.size == 50
    assert report.closed_boundary_count is None
    assert not report.finite


@pytest.mark.parametrize("budget", [0, -5, None])
def test_invalid_budget(tree, budget):
    with pytest.raises(PercolationError):
        explore_cluster(tree, PercolationConfig(p=0.5), vertex_budget=budget)


def test_mode_mismatch(tree):
    with pytest.raises(ModeMismatchError):
        explore_cluster(tree, PercolationConfig(p=0.5, mode=SITE))
    with pytest.raises(ModeMismatchError):
        site_explore_cluster(tree, PercolationConfig(p=0.5))


def test_site_closed_start(tree):
    report = site_explore_cluster(tree, PercolationConfig(p=0.0, mode=SITE))
    assert report.finite
    assert report.vertices == ()
    assert report.closed_boundary_count == 0
    assert event_inclusion_holds(report, 1.0)


def test_site_tree_boundary(tree):
    finite = 0
    for seed in range(200):
        report = explore(tree, PercolationConfig(p=0.4, mode=SITE, seed=seed), vertex_budget=5000)
        if not report.finite or not report.vertices:
            continue
        finite += 1
        assert report.closed_boundary_count == report.size + 2
        assert report.mode == SITE
    assert finite > 30


def test_site_open_tree(tree):
    report = site_explore_cluster(tree, PercolationConfig(p=1.0, mode=SITE), vertex_budget=20)
    assert report.status == ExplorationStatus.BUDGET_EXCEEDED


def test_expected_cluster_size_formula():
    assert expected_cluster_size_tree(2, 0.25) == pytest.approx(2.5)
    assert expected_cluster_size_tree(2, 0.25, SITE) == pytest.approx(0.625)
    assert expected_cluster_size_tree(2, 0.0) == 1.0
    assert math.isinf(expected_cluster_size_tree(2, 0.5))


@pytest.mark.parametrize("mode, expected", [(PercolationMode.BOND, 2.5), (SITE, 0.625)])
def test_expected_cluster_size_empirical(tree, mode, expected):
    sizes = []
    for i in range(4000):
        cfg = PercolationConfig(p=0.25, mode=mode, seed=derive_seed(7, i))
        report = explore(tree, cfg, vertex_budget=100_000)
        assert report.finite
        sizes.append(report.size)
    assert sum(sizes) / len(sizes) == pytest.approx(expected, abs=0.2)


def test_survival_curve_is_monotone(tree):
    curve = survival_curve(tree, [0.3, 0.5, 0.6, 0.8], trials=200, budget=200, master_seed=5)
    survived = [pt.survived for pt in curve.points]
    assert survived == sorted(survived)
    assert curve.points[-1].frequency > 0.5
    assert all(pt.trials == 200 for pt in curve.points)


def test_survival_curve_ignores_worker_count(tree):
    kwargs = dict(p_grid=[0.55, 0.7], trials=40, budget=100, master_seed=3)
    assert survival_curve(tree, workers=2, **kwargs) == survival_curve(tree, workers=1, **kwargs)


def test_survival_curve_without_trials(tree):
    curve = survival_curve(tree, [0.5], trials=0, budget=100)
    assert curve.points[0].frequency == 0.0
    assert curve.points[0].survived == 0


def test_histogram_accounts_for_every_trial(tree):
    hist = boundary_tail_histogram(tree, 0.6, trials=300, budget=200, master_seed=1)
    assert sum(hist.counts.values()) + hist.survived == hist.trials
    assert min(hist.counts) >= 3
    assert sum(hist.frequencies().values()) <= 1.0


def test_histogram_at_p_zero(tree):
    hist = boundary_tail_histogram(tree, 0.0, trials=50, budget=10)
    assert hist.counts == {3: 50}
    assert hist.survived == 0


def test_histogram_rejects_bad_p(tree):
    with pytest.raises(PercolationError):
        boundary_tail_histogram(tree, 1.2, trials=10, budget=10)


def test_boundary_tail_decays(tree):
    hist = boundary_tail_histogram(tree, 0.6, trials=2000, budget=200, master_seed=11)
    fit = fit_boundary_tail(hist, min_count=20)
    assert fit.slope < 0


def test_boundary_tail_needs_data(tree):
    hist = boundary_tail_histogram(tree, 0.0, trials=50, budget=10)
    with pytest.raises(PercolationError):
        fit_boundary_tail(hist)


def test_threshold_from_curve():
    points = [
        SurvivalPoint(p=0.4, trials=10, survived=0, frequency=0.0),
        SurvivalPoint(p=0.5, trials=10, survived=1, frequency=0.1),
        SurvivalPoint(p=0.6, trials=10, survived=3, frequency=0.3),
        SurvivalPoint(p=0.7, trials=10, survived=6, frequency=0.6),
    ]
    curve = SurvivalCurve(mode=PercolationMode.BOND, budget=10, points=points)
    assert estimate_threshold(curve) == pytest.approx(0.45)
    with pytest.raises(PercolationError):
        estimate_threshold(SurvivalCurve(mode=PercolationMode.BOND, budget=10, points=points[:2]))


@pytest.mark.slow
def test_boundary_tail_decays_at_large_scale(tree):
    hist = boundary_tail_histogram(tree, 0.7, trials=20_000, budget=300, master_seed=2)
    fit = fit_boundary_tail(hist, min_count=50)
    assert fit.slope < 0
    assert fit.ci_high < 0


@pytest.mark.slow
@pytest.mark.parametrize("mode", [PercolationMode.BOND, SITE])
def test_tree_threshold(tree, mode):
    grid = [0.50, 0.52, 0.54, 0.56, 0.58]
    if mode == SITE:
        grid += [0.60, 0.62]
    curve = survival_curve(tree, grid, trials=1000, budget=1000, master_seed=4, mode=mode)
    assert estimate_threshold(curve) == pytest.approx(0.5, abs=0.03)
