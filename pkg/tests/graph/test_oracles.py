# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
"""
Graph oracle contract tests.

Every family is checked on a ball of radius 3 around its basepoint:
- neighbor lists are symmetric, duplicate free and never contain the vertex
- degrees agree with the neighbor lists
- canonical keys round-trip and order the ball
"""
import pytest

from anchorsim.common.sdk import Sdk as sdkclient
from anchorsim.graph.core.common import ball, neighbors
from tests.graph.test_cases import test_cases

RADIUS = 3


@pytest.fixture(scope="module", name="oracle")
def instantiate_oracle(request):
    """Fixture to create and share a graph oracle across tests"""
    return sdkclient.create_oracle_from(request.param["graph"])


@pytest.fixture(scope="module", name="region")
def ball_around_basepoint(oracle):
    return ball(oracle, oracle.basepoint, RADIUS)


def id_func(val):
    return val["name"]


@pytest.mark.parametrize("oracle", test_cases, ids=id_func, indirect=True)
def test_neighbors_are_symmetric_and_simple(oracle, region):
    for v, d in zip(region.vertices, region.distance):
        nbrs = oracle.neighbors(v)
        assert v not in nbrs
        assert len(set(nbrs)) == len(nbrs)
        if d < RADIUS:
            for u in nbrs:
                assert v in oracle.neighbors(u)


@pytest.mark.parametrize("oracle", test_cases, ids=id_func, indirect=True)
def test_degree_matches_neighbors(oracle, region):
    for v in region.vertices:
        assert oracle.degree(v) == len(oracle.neighbors(v))
        assert oracle.degree(v) <= oracle.max_degree


@pytest.mark.parametrize(
    "case", [case for case in test_cases if case["basepoint_degree"] is not None], ids=id_func
)
def test_basepoint_degree(case):
    oracle = sdkclient.create_oracle_from(case["graph"])
    assert oracle.degree(oracle.basepoint) == case["basepoint_degree"]


@pytest.mark.parametrize("oracle", test_cases, ids=id_func, indirect=True)
def test_keys_round_trip(oracle, region):
    for v, key in zip(region.vertices, region.keys):
        assert oracle.decode(oracle.encode(v)) == v
        assert oracle.from_key(key) == v
        assert key.family_tag == oracle.family


@pytest.mark.parametrize("oracle", test_cases, ids=id_func, indirect=True)
def test_ball_is_sorted_by_key(oracle, region):
    assert list(region.keys) == sorted(region.keys)
    assert region.distance[region.root] == 0
    assert region.vertices[region.root] == oracle.basepoint


@pytest.mark.parametrize("oracle", test_cases, ids=id_func, indirect=True)
def test_neighbors_by_key(oracle, region):
    key = region.keys[region.root]
    expected = [oracle.key(u) for u in oracle.neighbors(oracle.basepoint)]
    assert neighbors(oracle, key) == expected


@pytest.mark.parametrize("case", test_cases, ids=id_func)
def test_oracle_is_deterministic(case):
    first = sdkclient.create_oracle_from(case["graph"])
    second = sdkclient.create_oracle_from(case["graph"])
    a = ball(first, first.basepoint, RADIUS)
    b = ball(second, second.basepoint, RADIUS)
    assert a.keys == b.keys
    assert a.adjacency == b.adjacency
