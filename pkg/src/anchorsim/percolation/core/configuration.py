# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
from anchorsim import logger
from anchorsim.common.prf import prf_uniform
from anchorsim.graph.core import encoding
from anchorsim.graph.core.schemas import EdgeKey, VertexKey
from anchorsim.percolation.core.schemas import PercolationConfig, PercolationMode
from anchorsim.percolation.errors import ModeMismatchError

log = logger.get_logger(__name__)

_BOND_DOMAIN = b"bond"
_SITE_DOMAIN = b"site"


def bond_uniform(seed: int, token: bytes) -> float:
    return prf_uniform(seed, _BOND_DOMAIN + token)


def site_uniform(seed: int, token: bytes) -> float:
    return prf_uniform(seed, _SITE_DOMAIN + token)


def _require_mode(cfg: PercolationConfig, mode: PercolationMode):
    if cfg.mode != mode:
        err_msg = "Operation needs {} percolation, config is {}".format(mode.value, cfg.mode.value)
        log.error(err_msg)
        raise ModeMismatchError(err_msg)


def token_open(cfg: PercolationConfig, token: bytes) -> bool:
    """Open state of the edge (bond mode) or vertex (site mode) with percolation token ``token``."""
    if cfg.mode == PercolationMode.BOND:
        return bond_uniform(cfg.seed, token) < cfg.p
    return site_uniform(cfg.seed, token) < cfg.p


def edge_open(cfg: PercolationConfig, edge: EdgeKey) -> bool:
    _require_mode(cfg, PercolationMode.BOND)
    return bond_uniform(cfg.seed, encoding.edge_token(edge)) < cfg.p


def vertex_open(cfg: PercolationConfig, vertex: VertexKey) -> bool:
    _require_mode(cfg, PercolationMode.SITE)
    return site_uniform(cfg.seed, encoding.vertex_token(vertex)) < cfg.p
