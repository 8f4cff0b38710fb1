# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
import math

import pytest

from anchorsim.expansion.core.formulas import (
    binomial_tail,
    chernoff_check,
    log_psi,
    psi,
    psi_bound_check,
    rate_function,
    thresholds,
)
from anchorsim.expansion.core.schemas import AnimalCounts, BoundaryMode
from anchorsim.expansion.errors import DomainError


def _counts(counts, complete_through=4):
    return AnimalCounts(
        mode=BoundaryMode.EDGE,
        max_boundary=max(counts),
        max_size=max(counts),
        counts=counts,
        complete_through=complete_through,
        unbounded=False,
    )


def test_psi():
    assert psi(1.0) == 4.0
    assert math.log(psi(0.5)) == pytest.approx(log_psi(0.5))
    assert psi(2.0) == pytest.approx(3**1.5 / 2)


def test_rate_function():
    assert rate_function(0.3, 0.3) == 0.0
    assert rate_function(0.4, 0.0) == pytest.approx(-math.log(0.6))
    assert rate_function(0.5, 0.25) == pytest.approx(
        0.25 * math.log(0.5) + 0.75 * math.log(1.5)
    )


@pytest.mark.parametrize("p", [0.1, 0.3, 0.5, 0.9])
def test_rate_function_is_convex(p):
    grid = [k / 20 for k in range(21)]
    for a in grid:
        for b in grid:
            mid = rate_function(p, (a + b) / 2)
            assert mid <= (rate_function(p, a) + rate_function(p, b)) / 2 + 1e-12


def test_thresholds():
    result = thresholds(1.0)
    assert result.pc_bound == 0.5
    assert result.thm11_threshold == pytest.approx(0.75)
    assert result.appendix_threshold == 0.5
    assert thresholds(0.5).pc_bound == pytest.approx(2 / 3)


@pytest.mark.parametrize(
    "call",
    [
        lambda: psi(0.0),
        lambda: psi(-1.0),
        lambda: log_psi(0.0),
        lambda: thresholds(-1.0),
        lambda: rate_function(0.0, 0.1),
        lambda: rate_function(0.5, 1.5),
        lambda: binomial_tail(5, 0.5, 6),
    ],
)
def test_domain_errors(call):
    with pytest.raises(DomainError):
        call()
    with pytest.raises(ValueError):
        call()


def test_binomial_tail():
    assert binomial_tail(4, 0.5, 1) == pytest.approx(5 / 16)
    assert binomial_tail(4, 0.5, 4) == 1.0
    assert binomial_tail(10, 0.3, 0) == pytest.approx(0.7**10)


def test_chernoff_bound():
    check = chernoff_check(200)
    assert check.holds
    assert check.cases == 4 * 200 * 10
    assert check.worst_ratio <= 1.0 + 1e-9


def test_psi_bound_verdicts():
    check = psi_bound_check(_counts({1: 0, 2: 1, 3: 100, 4: 2}), 1.0)
    assert check.verdicts == {1: True, 2: True, 3: False, 4: True}
    assert check.n0 == 4
    assert check.holds


def test_psi_bound_fails_at_the_end():
    check = psi_bound_check(_counts({1: 0, 2: 1, 3: 2, 4: 1000}), 1.0)
    assert not check.verdicts[4]
    assert check.n0 is None
    assert not check.holds


def test_psi_bound_only_uses_exact_counts():
    check = psi_bound_check(_counts({1: 0, 2: 1, 3: 1, 4: 10**6}, complete_through=3), 1.0)
    assert set(check.verdicts) == {1, 2, 3}
    assert check.n0 == 1


@pytest.mark.parametrize("complete_through,n_min", [(0, 1), (3, 4)])
def test_psi_bound_needs_exact_counts(complete_through, n_min):
    counts = _counts({1: 0, 2: 1, 3: 1, 4: 1}, complete_through=complete_through)
    with pytest.raises(DomainError, match="exact through"):
        psi_bound_check(counts, 1.0, n_min=n_min)
