# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
"""
Single steps of the simple and the delayed random walk.

The delayed walk picks one of the D + 1 options {neighbors(v)..., v} uniformly
(choice index D is the explicit self-choice) and moves only if the chosen
edge (bond mode) or vertex (site mode) is open.
"""
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple

from anchorsim import logger
from anchorsim.graph.core.base_graph_oracle import BaseGraphOracle
from anchorsim.percolation.core.configuration import token_open
from anchorsim.percolation.core.schemas import PercolationConfig, PercolationMode
from anchorsim.walks.core.rng import ChoiceStream
from anchorsim.walks.errors import IsolatedVertexError, WalkError

log = logger.get_logger(__name__)


def is_open_step(oracle: BaseGraphOracle, cfg: PercolationConfig, v: Any, u: Any) -> bool:
    """Whether the delayed walk at ``v`` may move to its neighbour ``u``."""
    if cfg.mode == PercolationMode.BOND:
        return token_open(cfg, oracle.edge_token(v, u))
    return token_open(cfg, oracle.vertex_token(u))


def srw_step(oracle: BaseGraphOracle, rng: ChoiceStream, v: Any) -> Any:
    nbrs = oracle.neighbors(v)
    if not nbrs:
        err_msg = "Vertex {!r} has no neighbours".format(v)
        log.error(err_msg)
        raise IsolatedVertexError(err_msg)
    return nbrs[rng.choice(len(nbrs))]


def delayed_choice(
    oracle: BaseGraphOracle, cfg: PercolationConfig, rng: ChoiceStream, v: Any
) -> Tuple[Any, int, bool]:
    """One delayed step, returning (next vertex, choice index, moved)."""
    nbrs = oracle.neighbors(v)
    i = rng.choice(len(nbrs) + 1)
    if i == len(nbrs):
        return v, i, False
    u = nbrs[i]
    if is_open_step(oracle, cfg, v, u):
        return u, i, True
    return v, i, False


def delayed_step(
    oracle: BaseGraphOracle, cfg: PercolationConfig, rng: ChoiceStream, v: Any
) -> Any:
    return delayed_choice(oracle, cfg, rng, v)[0]


def delayed_path(
    oracle: BaseGraphOracle, cfg: PercolationConfig, rng: ChoiceStream, start: Any, steps: int
) -> Tuple[List[Any], List[int]]:
    """Positions X_0..X_steps of the delayed walk and the choice index of every step."""
    path = [start]
    choices = []
    v = start
    for _ in range(steps):
        v, i, _ = delayed_choice(oracle, cfg, rng, v)
        path.append(v)
        choices.append(i)
    return path, choices


def srw_path_from_choices(
    oracle: BaseGraphOracle, cfg: PercolationConfig, start: Any, choices: Sequence[int]
) -> List[Any]:
    """
    Replay delayed-walk choices with the self-choices and closed choices
    deleted. The result is the path of the walk that moves at every step,
    uniformly among the open neighbours.
    """
    path = [start]
    v = start
    for i in choices:
        nbrs = oracle.neighbors(v)
        if i >= len(nbrs):
            continue
        u = nbrs[i]
        if is_open_step(oracle, cfg, v, u):
            v = u
            path.append(v)
    return path


def transition_matrix(
    oracle: BaseGraphOracle, cfg: PercolationConfig, vertices: Sequence[Any]
) -> List[List[Fraction]]:
    """
    Exact delayed-walk transition matrix restricted to ``vertices``: 1/(D+1)
    for each open edge, the remaining mass on the diagonal.
    """
    index: Dict[Any, int] = {v: i for i, v in enumerate(vertices)}
    size = len(vertices)
    matrix = [[Fraction(0)] * size for _ in range(size)]
    for i, v in enumerate(vertices):
        nbrs = oracle.neighbors(v)
        share = Fraction(1, len(nbrs) + 1)
        stay = Fraction(1)
        for u in nbrs:
            if not is_open_step(oracle, cfg, v, u):
                continue
            if u not in index:
                err_msg = "Open neighbour {!r} of {!r} lies outside the vertex set".format(u, v)
                log.error(err_msg)
                raise WalkError(err_msg)
            matrix[i][index[u]] += share
            stay -= share
        matrix[i][i] += stay
    return matrix
