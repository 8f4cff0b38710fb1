# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
"""
Keyed pseudo-random function shared by every lazily randomised object.

All randomness that must be a pure function of (seed, key) goes through
``prf_u64``: percolation configurations, stretch lengths, lazy Galton-Watson
offspring and trial-seed derivation.
"""
import hashlib

from anchorsim import config

_MASK64 = (1 << 64) - 1
_TWO_POW_MINUS_53 = 2.0**-53


def _seed_key(seed: int) -> bytes:
    return (seed & _MASK64).to_bytes(8, "big")


def prf_u64(seed: int, data: bytes) -> int:
    """BLAKE2b keyed by the 64-bit seed, truncated to 64 bits."""
    digest = hashlib.blake2b(data, digest_size=8, key=_seed_key(seed)).digest()
    return int.from_bytes(digest, "big")


def prf_uniform(seed: int, data: bytes) -> float:
    """Uniform in [0, 1) with 53 bits of resolution."""
    return (prf_u64(seed, data) >> 11) * _TWO_POW_MINUS_53


def derive_seed(master_seed: int, index: int, domain: bytes = b"trial") -> int:
    """
    Seed of trial ``index`` under ``master_seed``.

    Stable across releases for a given SEED_DERIVATION_VERSION so that
    published results can be reproduced bit for bit.
    """
    if index < 0:
        raise ValueError("Trial index must be non-negative, got {}".format(index))
    payload = b"%s:v%d:" % (domain, config.SEED_DERIVATION_VERSION) + index.to_bytes(8, "big")
    return prf_u64(master_seed, payload)
