# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
import pickle
from collections import deque

import pytest
from hypothesis import given
from hypothesis import strategies as st

from anchorsim.common.sdk import Sdk as sdkclient
from anchorsim.graph.adapters.errors import (
    BudgetExceededError,
    CapabilityNotSupported,
    FamilyMismatchError,
    GraphOracleError,
    InvalidGroupError,
    VertexDecodeError,
)
from anchorsim.graph.adapters.stretch.oracle import stretch_length
from anchorsim.graph.core import encoding
from anchorsim.graph.core.common import ball
from anchorsim.graph.core.finite_group import FiniteGroupGraph
from anchorsim.graph.core.schemas import (
    EdgeKey,
    GeometricLaw,
    LampState,
    OriginalVertex,
    StretchDescriptor,
    TruncatedPowerLaw,
)
from tests.graph.test_cases import G1, Z3_GROUP_FILE

Z4_TABLE = tuple(tuple((a + b) % 4 for b in range(4)) for a in range(4))


def _stretch(base, law, seed=0):
    return sdkclient.create_oracle_from(
        {"family": "stretch", "base": base, "law": law, "seed": seed}
    )


def test_lamplighter_basepoint_neighbors():
    g1 = sdkclient.create_oracle_from(G1)
    assert g1.neighbors(g1.basepoint) == [
        LampState((1,), frozenset()),
        LampState((-1,), frozenset()),
        LampState((0,), frozenset({((0,), 1)})),
    ]


def test_lamplighter_flip_is_an_involution_in_z2():
    g1 = sdkclient.create_oracle_from(G1)
    lit = g1.neighbors(g1.basepoint)[-1]
    assert g1.neighbors(lit)[-1] == g1.basepoint
    assert g1.lamp_cost(lit) == 1


def test_small_balls():
    z1 = sdkclient.create_oracle_from({"family": "lattice", "d": 1})
    region = ball(z1, z1.basepoint, 2)
    assert len(region) == 5
    assert region.edge_count == 4

    tree = sdkclient.create_oracle_from({"family": "tree", "b": 2})
    assert len(ball(tree, (), 2)) == 10


def _independent_lamplighter_ball(radius):
    start = (0, frozenset())
    dist = {start: 0}
    queue = deque([start])
    while queue:
        m, lit = queue.popleft()
        if dist[(m, lit)] == radius:
            continue
        for nxt in ((m + 1, lit), (m - 1, lit), (m, lit ^ {m})):
            if nxt not in dist:
                dist[nxt] = dist[(m, lit)] + 1
                queue.append(nxt)
    return dist


def test_lamplighter_ball_matches_independent_bfs():
    g1 = sdkclient.create_oracle_from(G1)
    region = ball(g1, g1.basepoint, 8)
    expected = _independent_lamplighter_ball(8)
    assert len(region) == len(expected)
    for v, d in zip(region.vertices, region.distance):
        key = (v.marker[0], frozenset(x[0] for x, _ in v.lamps))
        assert expected[key] == d


def test_ball_budget_names_the_limit():
    z2 = sdkclient.create_oracle_from({"family": "lattice", "d": 2})
    with pytest.raises(BudgetExceededError) as excinfo:
        ball(z2, z2.basepoint, 50, budget=100)
    assert excinfo.value.budget_name == "BALL_VERTEX_BUDGET"
    assert "BALL_VERTEX_BUDGET" in str(excinfo.value)


def test_negative_radius():
    z2 = sdkclient.create_oracle_from({"family": "lattice", "d": 2})
    with pytest.raises(GraphOracleError):
        ball(z2, z2.basepoint, -1)


@pytest.mark.parametrize(
    "spec, data",
    [
        ({"family": "lattice", "d": 2}, b"\x00\x01"),
        ({"family": "tree", "b": 2}, bytes([5])),
        ({"family": "binary-rooted"}, bytes([0, 2])),
        (G1, b"\x00"),
        ({"family": "gw", "probs": "0,0,1"}, bytes([0, 3])),
    ],
)
def test_decode_rejects_foreign_bytes(spec, data):
    oracle = sdkclient.create_oracle_from(spec)
    with pytest.raises(VertexDecodeError):
        oracle.decode(data)


def test_key_of_another_family_is_rejected():
    z1 = sdkclient.create_oracle_from({"family": "lattice", "d": 1})
    tree = sdkclient.create_oracle_from({"family": "tree", "b": 2})
    with pytest.raises(FamilyMismatchError):
        z1.from_key(tree.key(()))


def test_edge_key_is_canonical():
    z1 = sdkclient.create_oracle_from({"family": "lattice", "d": 1})
    a, b = z1.key((3,)), z1.key((-2,))
    assert EdgeKey.of(a, b) == EdgeKey.of(b, a)
    assert EdgeKey.of(a, b).lo == b
    assert z1.edge_token((3,), (4,)) == z1.edge_token((4,), (3,))


def test_capability_is_checked():
    z1 = sdkclient.create_oracle_from({"family": "lattice", "d": 1})
    g1 = sdkclient.create_oracle_from(G1)
    with pytest.raises(CapabilityNotSupported):
        type(g1).lamp_cost(z1, g1.basepoint)


def test_unknown_family():
    with pytest.raises(ValueError, match="Available"):
        sdkclient.create_oracle_from({"family": "hypercube"})


# Stretch


def test_constant_stretch_replaces_each_edge_by_a_path():
    oracle = _stretch({"family": "lattice", "d": 1}, {"kind": "constant", "length": 3})
    assert oracle.length((0,), (1,)) == 3
    region = ball(oracle, oracle.basepoint, 3)
    assert region.distance[region.index_of(OriginalVertex((1,)))] == 3
    assert len(region) == 7


def test_geometric_stretch_path_lengths():
    oracle = _stretch({"family": "lattice", "d": 1}, {"kind": "geometric", "success": 0.5}, 5)
    for i in range(10):
        length = oracle.length((i,), (i + 1,))
        region = ball(oracle, OriginalVertex((i,)), length)
        assert region.distance[region.index_of(OriginalVertex((i + 1,)))] == length


def test_stretch_length_is_a_function_of_seed_and_edge():
    base = sdkclient.create_oracle_from({"family": "lattice", "d": 2})
    desc = StretchDescriptor(law=GeometricLaw(success=0.3), seed=9)
    edge = base.edge_key((0, 0), (1, 0))
    assert stretch_length(desc, edge) == stretch_length(desc, edge)
    a = _stretch({"family": "lattice", "d": 2}, {"kind": "geometric", "success": 0.3}, 9)
    assert a.length((1, 0), (0, 0)) == stretch_length(desc, edge)


def test_geometric_stretch_mean():
    z1 = sdkclient.create_oracle_from({"family": "lattice", "d": 1})
    desc = StretchDescriptor(law=GeometricLaw(success=0.5), seed=11)
    lengths = [stretch_length(desc, z1.edge_key((i,), (i + 1,))) for i in range(20000)]
    assert min(lengths) >= 1
    assert sum(lengths) / len(lengths) == pytest.approx(2.0, abs=0.05)


def test_power_law():
    law = TruncatedPowerLaw(exponent=2.0, cap=50)
    assert law.probabilities.sum() == pytest.approx(1.0)
    assert law.quantile(0.0) == 1
    assert law.quantile(0.999999) <= 50
    assert GeometricLaw(success=1.0).quantile(0.7) == 1


@pytest.mark.parametrize(
    "base,geodesic",
    [
        ({"family": "binary-rooted"}, True),
        ({"family": "tree", "b": 2}, True),
        ({"family": "lattice", "d": 2}, False),
    ],
)
def test_stretch_steps_toward_basepoint(base, geodesic):
    oracle = _stretch(base, {"kind": "geometric", "success": 0.5}, 2)
    region = ball(oracle, oracle.basepoint, 8)
    for v, d in zip(region.vertices, region.distance):
        path = oracle.path_to_basepoint(v)
        assert path[-1] == oracle.basepoint
        for a, b in zip(path, path[1:]):
            assert b in oracle.neighbors(a)
        if geodesic:
            assert len(path) - 1 == d
        else:
            assert len(path) - 1 >= d
        assert oracle.norm(v) == d


def test_stretch_lengths_use_a_bounded_cache():
    oracle = _stretch({"family": "lattice", "d": 2}, {"kind": "geometric", "success": 0.3}, 9)
    first = [oracle.length((i, 0), (i + 1, 0)) for i in range(50)]
    assert oracle._edge_length.cache_info().maxsize == 1 << 16
    assert oracle._edge_length.cache_info().currsize == 50
    copy = pickle.loads(pickle.dumps(oracle))
    assert [copy.length((i + 1, 0), (i, 0)) for i in range(50)] == first


def test_lamplighter_site_keys_use_a_bounded_cache():
    g1 = sdkclient.create_oracle_from(G1)
    assert g1.site_key((3,)) == g1.base.encode((3,))
    assert g1.site_key.cache_info().maxsize == 1 << 16
    copy = pickle.loads(pickle.dumps(g1))
    assert copy.site_key((3,)) == g1.site_key((3,))


# Galton-Watson trees


def test_gw_tree_is_fixed_by_its_seed():
    spec = {"family": "gw", "probs": "0.2,0.3,0.5", "seed": 4}
    a = sdkclient.create_oracle_from(spec)
    b = sdkclient.create_oracle_from(spec)
    assert a.materialize(200) == b.materialize(200)


def test_gw_materialize_truncates_breadth_first():
    oracle = sdkclient.create_oracle_from({"family": "gw", "probs": "0,0,1"})
    tree = oracle.materialize(10)
    assert tree.size == 10
    assert tree.truncated
    assert not tree.has_leaf()


def test_gw_materialize_needs_capability():
    z1 = sdkclient.create_oracle_from({"family": "lattice", "d": 1})
    gw = sdkclient.create_oracle_from({"family": "gw", "probs": "0,0,1"})
    with pytest.raises(CapabilityNotSupported):
        type(gw).materialize(z1, 10)


def test_explicit_rooted_tree():
    oracle = sdkclient.create_oracle_from({"family": "rooted", "parents": [0, 0, 0, 1]})
    assert oracle.neighbors(0) == [1, 2]
    assert oracle.neighbors(1) == [0, 3]
    assert oracle.norm(3) == 2
    with pytest.raises(GraphOracleError):
        sdkclient.create_oracle_from({"family": "rooted", "parents": [0, 2, 0]})


# Finite groups


def test_cyclic_groups():
    z2 = FiniteGroupGraph.cyclic(2)
    assert z2.generators == (1,)
    z3 = FiniteGroupGraph.cyclic(3)
    assert z3.norms == (0, 1, 1)
    assert z3.degree == 2
    assert FiniteGroupGraph.cyclic(5).diameter == 2


def test_group_file(tmp_path):
    path = tmp_path / "z3.txt"
    path.write_text(Z3_GROUP_FILE)
    group = FiniteGroupGraph.parse(str(path))
    assert group == FiniteGroupGraph.cyclic(3)
    g = sdkclient.create_oracle_from(
        {"family": "lamplighter", "base": {"family": "lattice", "d": 1}, "group": str(path)}
    )
    assert g.degree(g.basepoint) == 4


@pytest.mark.parametrize(
    "kwargs",
    [
        {"order": 4, "table": Z4_TABLE, "generators": (1,)},
        {"order": 4, "table": Z4_TABLE, "generators": (2,)},
        {"order": 2, "table": ((0, 1), (1, 0)), "generators": (0, 1)},
        {"order": 2, "table": ((0, 1), (0, 1)), "generators": (1,)},
    ],
    ids=["not-symmetric", "not-generating", "identity-generator", "not-a-table"],
)
def test_invalid_groups(kwargs):
    with pytest.raises(InvalidGroupError):
        FiniteGroupGraph.build(**kwargs)


def test_malformed_group_text():
    with pytest.raises(InvalidGroupError):
        FiniteGroupGraph.from_text("2\n0 1\n")


# Canonical encodings


@given(st.integers(-(2**31), 2**31 - 1), st.integers(-(2**31), 2**31 - 1))
def test_pack_int_preserves_order(a, b):
    assert (a < b) == (encoding.pack_int(a) < encoding.pack_int(b))
    assert encoding.unpack_int(encoding.pack_int(a)) == a


@given(st.lists(st.integers(-1000, 1000), min_size=3, max_size=3))
def test_lattice_key_round_trip(coords):
    z3 = sdkclient.create_oracle_from({"family": "lattice", "d": 3})
    v = tuple(coords)
    assert z3.from_key(z3.key(v)) == v


@given(st.lists(st.integers(0, 1), max_size=12))
def test_rooted_tree_key_round_trip(path):
    tree = sdkclient.create_oracle_from({"family": "binary-rooted"})
    v = tuple(path)
    assert tree.decode(tree.encode(v)) == v
    assert tree.norm(v) == len(v)


@given(st.dictionaries(st.integers(-20, 20), st.integers(1, 2), max_size=6), st.integers(-20, 20))
def test_lamplighter_key_round_trip(lamps, marker):
    g = sdkclient.create_oracle_from(
        {"family": "lamplighter", "base": {"family": "lattice", "d": 1}, "group": "z3"}
    )
    state = LampState.of((marker,), {(x,): value for x, value in lamps.items()})
    assert g.decode(g.encode(state)) == state
