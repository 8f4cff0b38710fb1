# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
import pytest

from anchorsim.common.prf import derive_seed, prf_u64, prf_uniform


def test_prf_is_a_pure_function():
    assert prf_u64(1, b"edge") == prf_u64(1, b"edge")
    assert prf_u64(1, b"edge") != prf_u64(2, b"edge")
    assert prf_u64(1, b"edge") != prf_u64(1, b"edgf")
    assert 0 <= prf_u64(7, b"") < 2**64


def test_uniforms_cover_the_unit_interval():
    values = [prf_uniform(3, i.to_bytes(4, "big")) for i in range(10_000)]
    assert all(0.0 <= u < 1.0 for u in values)
    assert sum(values) / len(values) == pytest.approx(0.5, abs=0.02)
    assert sum(u < 0.1 for u in values) == pytest.approx(1000, abs=100)


def test_derived_seeds():
    seeds = [derive_seed(5, i) for i in range(1000)]
    assert len(set(seeds)) == 1000
    assert derive_seed(5, 0) == derive_seed(5, 0)
    assert derive_seed(5, 0) != derive_seed(6, 0)
    assert derive_seed(5, 0, b"walk") != derive_seed(5, 0, b"trial")


def test_negative_index():
    with pytest.raises(ValueError):
        derive_seed(1, -1)
