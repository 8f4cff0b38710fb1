# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
import pytest

from anchorsim.common.oracle_factory import available_families
from anchorsim.common.sdk import Sdk as sdkclient
from anchorsim.graph.core.base_graph_oracle import BaseGraphOracle
from tests.graph.test_cases import test_cases


def id_func(val):
    return val["name"]


@pytest.mark.parametrize("case", test_cases, ids=id_func)
def test_oracle_instantiation(case):
    """Every graph family of the test corpus builds an oracle"""
    oracle = sdkclient.create_oracle_from(case["graph"])
    assert isinstance(oracle, BaseGraphOracle)


def test_named_oracles():
    oracles = sdkclient.create_oracles_from(
        {"line": {"family": "lattice", "d": 1}, "tree": {"family": "tree", "b": 3}}
    )
    assert set(oracles) == {"line", "tree"}
    assert oracles["tree"].degree(oracles["tree"].basepoint) == 4


def test_spec_is_not_mutated():
    spec = {"family": "lattice", "d": 2}
    sdkclient.create_oracle_from(spec)
    assert spec == {"family": "lattice", "d": 2}


@pytest.mark.parametrize("spec", [{}, {"family": "hypercube"}], ids=["missing", "unknown"])
def test_invalid_family(spec):
    with pytest.raises(ValueError) as excinfo:
        sdkclient.create_oracle_from(spec)
    assert "Available" in str(excinfo.value)
    assert "lamplighter" in available_families()
