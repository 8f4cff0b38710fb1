# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
"""Word-metric values and bounds for lamplighter states (m, eta)."""
from typing import Any, Iterable, Optional, Tuple

from anchorsim import logger
from anchorsim.graph.adapters.errors import FamilyMismatchError
from anchorsim.graph.adapters.lamplighter.oracle import GraphOracle as LamplighterOracle
from anchorsim.graph.adapters.lattice.oracle import GraphOracle as LatticeOracle
from anchorsim.graph.core.base_graph_oracle import BaseGraphOracle
from anchorsim.graph.core.schemas import LampState

log = logger.get_logger(__name__)


def _coordinate(x: Any) -> int:
    return x[0] if isinstance(x, tuple) else int(x)


def has_exact_metric(oracle: BaseGraphOracle) -> bool:
    """Lamplighter over Z^1 with F = Z_2, where the word metric has a closed form."""
    return (
        isinstance(oracle, LamplighterOracle)
        and isinstance(oracle.base, LatticeOracle)
        and oracle.base.d == 1
        and oracle.group.order == 2
    )


def lamplighter_distance_d1(state: LampState, oracle: Optional[BaseGraphOracle] = None) -> int:
    """
    Exact distance from (0, empty) in the lamplighter over Z with Z_2 lamps.

    With a = min(0, m, lit sites) and b = max(0, m, lit sites) the marker must
    sweep [a, b] and end at m, so the cost is the lamp count plus
    (b - a) + min(-a + b - m, b + m - a).
    """
    if oracle is not None and not has_exact_metric(oracle):
        err_msg = "Closed-form distance needs the lamplighter over Z^1 with Z_2 lamps, got {!r}"
        err_msg = err_msg.format(oracle)
        log.error(err_msg)
        raise FamilyMismatchError(err_msg)
    m = _coordinate(state.marker)
    sites = [_coordinate(x) for x, _ in state.lamps]
    a = min([0, m] + sites)
    b = max([0, m] + sites)
    return len(sites) + (b - a) + min(-a + b - m, b + m - a)


def join_size(base: BaseGraphOracle, points: Iterable[Any]) -> int:
    """
    Vertex count of the union of the basepoint paths of ``points``: a
    connected set containing the basepoint and every point.
    """
    tree = {base.basepoint}
    for x in points:
        while x is not None and x not in tree:
            tree.add(x)
            x = base.toward_basepoint(x)
    return len(tree)


def lamplighter_distance_bounds(state: LampState, oracle: LamplighterOracle) -> Tuple[int, int]:
    """
    (lower, upper) with lower = |m| + sum |eta(x)|_F and
    upper = |m| + 2 (|T| - 1) + sum |eta(x)|_F for T the basepoint join of the
    marker and the lit sites: tour T from the basepoint, then walk to m.
    """
    marker_norm = oracle.base.norm(state.marker)
    cost = oracle.lamp_cost(state)
    tree = join_size(oracle.base, [state.marker] + [x for x, _ in state.lamps])
    return marker_norm + cost, marker_norm + 2 * (tree - 1) + cost


def range_bound(marker_norm: int, range_size: int, lamp_cost: int) -> int:
    """|m_n| + 2 |R_n| + sum |eta_n(x)|_F, an upper bound on the distance at time n."""
    return marker_norm + 2 * range_size + lamp_cost


def range_bound_holds(marker_norm: int, range_size: int, lamp_cost: int, group_order: int) -> bool:
    """The range bound is at most (3 + |F|) |R_n|."""
    return range_bound(marker_norm, range_size, lamp_cost) <= (3 + group_order) * range_size
