# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
import pytest

from anchorsim.common.sdk import Sdk as sdkclient
from anchorsim.graph.core.common import ball
from anchorsim.percolation.core.configuration import edge_open, token_open, vertex_open
from anchorsim.percolation.core.exploration import explore_cluster
from anchorsim.percolation.core.schemas import PercolationConfig, PercolationMode
from anchorsim.percolation.errors import ModeMismatchError
from tests.percolation.test_cases import test_cases


@pytest.fixture(scope="module", name="oracle")
def instantiate_oracle(request):
    return sdkclient.create_oracle_from(request.param["graph"])


def id_func(val):
    return val["name"]


def _ball_edges(oracle, radius=3):
    region = ball(oracle, oracle.basepoint, radius)
    return [(region.vertices[i], region.vertices[j]) for i, j in region.edges()]


@pytest.mark.parametrize("oracle", test_cases, ids=id_func, indirect=True)
def test_configurations_are_monotonically_coupled(oracle):
    low = PercolationConfig(p=0.3, seed=17)
    high = PercolationConfig(p=0.6, seed=17)
    opened = 0
    for u, v in _ball_edges(oracle):
        edge = oracle.edge_key(u, v)
        if edge_open(low, edge):
            opened += 1
            assert edge_open(high, edge)
    assert opened > 0


@pytest.mark.parametrize("oracle", test_cases, ids=id_func, indirect=True)
def test_clusters_are_monotonically_coupled(oracle):
    compared = 0
    for seed in range(40):
        low = explore_cluster(oracle, PercolationConfig(p=0.3, seed=seed), vertex_budget=5000)
        high = explore_cluster(oracle, PercolationConfig(p=0.45, seed=seed), vertex_budget=5000)
        if high.finite:
            assert set(low.vertices) <= set(high.vertices)
            compared += 1
    assert compared > 0


@pytest.mark.parametrize("oracle", test_cases, ids=id_func, indirect=True)
def test_extreme_parameters(oracle):
    edges = [oracle.edge_key(u, v) for u, v in _ball_edges(oracle)]
    assert not any(edge_open(PercolationConfig(p=0.0, seed=3), e) for e in edges)
    assert all(edge_open(PercolationConfig(p=1.0, seed=3), e) for e in edges)


@pytest.mark.parametrize("oracle", test_cases, ids=id_func, indirect=True)
def test_state_depends_only_on_seed_and_edge(oracle):
    cfg = PercolationConfig(p=0.5, seed=99)
    for u, v in _ball_edges(oracle):
        assert edge_open(cfg, oracle.edge_key(u, v)) == edge_open(cfg, oracle.edge_key(v, u))
        assert token_open(cfg, oracle.edge_token(u, v)) == edge_open(cfg, oracle.edge_key(u, v))


def test_open_fraction():
    z1 = sdkclient.create_oracle_from({"family": "lattice", "d": 1})
    cfg = PercolationConfig(p=0.6, seed=1)
    n = 20000
    opened = sum(edge_open(cfg, z1.edge_key((i,), (i + 1,))) for i in range(n))
    assert opened / n == pytest.approx(0.6, abs=0.015)


def test_site_open_fraction():
    z1 = sdkclient.create_oracle_from({"family": "lattice", "d": 1})
    cfg = PercolationConfig(p=0.3, mode=PercolationMode.SITE, seed=2)
    n = 20000
    opened = sum(vertex_open(cfg, z1.key((i,))) for i in range(n))
    assert opened / n == pytest.approx(0.3, abs=0.015)


def test_mode_is_checked():
    z1 = sdkclient.create_oracle_from({"family": "lattice", "d": 1})
    site = PercolationConfig(p=0.5, mode=PercolationMode.SITE)
    bond = PercolationConfig(p=0.5)
    with pytest.raises(ModeMismatchError):
        edge_open(site, z1.edge_key((0,), (1,)))
    with pytest.raises(ModeMismatchError):
        vertex_open(bond, z1.key((0,)))


def test_parameter_range():
    with pytest.raises(ValueError):
        PercolationConfig(p=1.5)
