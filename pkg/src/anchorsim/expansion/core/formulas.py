# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
"""Closed-form bounds tied to an anchored expansion constant h."""
import math
from typing import Sequence

from scipy.special import rel_entr

from anchorsim import logger
from anchorsim.expansion.core.schemas import (
    AnimalCounts,
    ChernoffCase,
    ChernoffCheck,
    PsiBoundCheck,
    Thresholds,
)
from anchorsim.expansion.errors import DomainError

log = logger.get_logger(__name__)

DEFAULT_P_GRID = (0.3, 0.5, 0.7, 0.9)
DEFAULT_ALPHA_FRACTIONS = tuple(i / 10 for i in range(10))


def _require_positive_h(h: float):
    if not h > 0:
        err_msg = "Expansion constant h must be > 0, got {}".format(h)
        log.error(err_msg)
        raise DomainError(err_msg)


def psi(h: float) -> float:
    """Growth bound (1+h)^(1+1/h) / h for lattice animals with boundary ratio >= h."""
    _require_positive_h(h)
    return (1 + h) ** (1 + 1 / h) / h


def log_psi(h: float) -> float:
    _require_positive_h(h)
    return (1 + 1 / h) * math.log1p(h) - math.log(h)


def rate_function(p: float, alpha: float) -> float:
    """Binomial large-deviation rate: relative entropy of Bernoulli(alpha) to Bernoulli(p)."""
    if not 0.0 < p < 1.0:
        raise DomainError("p must lie in (0, 1), got {}".format(p))
    if not 0.0 <= alpha <= 1.0:
        raise DomainError("alpha must lie in [0, 1], got {}".format(alpha))
    return float(rel_entr(alpha, p) + rel_entr(1.0 - alpha, 1.0 - p))


def binomial_tail(n: int, p: float, m: int) -> float:
    """P(Binom(n, p) <= m), summed exactly term by term."""
    if not 0 <= m <= n:
        raise DomainError("Need 0 <= m <= n, got m={} n={}".format(m, n))
    if m == n:
        return 1.0
    return math.fsum(math.comb(n, k) * p**k * (1.0 - p) ** (n - k) for k in range(m + 1))


def thresholds(h: float) -> Thresholds:
    _require_positive_h(h)
    exploration = 1.0 / (1.0 + h)
    return Thresholds(
        h=h,
        pc_bound=exploration,
        thm11_threshold=1.0 - h / (1.0 + h) ** (1.0 + 1.0 / h),
        appendix_threshold=exploration,
    )


def psi_bound_check(counts: AnimalCounts, h: float, n_min: int = 1) -> PsiBoundCheck:
    """
    Compare |A_n| with psi(h)^n in log space for every exactly counted n >= n_min.

    ``n0`` is the least n from which every verdict holds, None if the last
    one fails. Raises DomainError when no n >= n_min is counted exactly.
    """
    lp = log_psi(h)
    if counts.complete_through < n_min:
        err_msg = "Counts are exact through n = {}, nothing to check from n = {}".format(
            counts.complete_through, n_min
        )
        log.error(err_msg)
        raise DomainError(err_msg)
    verdicts = {}
    for n in range(n_min, counts.complete_through + 1):
        c = counts.counts.get(n, 0)
        verdicts[n] = c == 0 or math.log(c) <= n * lp
    n0 = None
    for n in sorted(verdicts, reverse=True):
        if not verdicts[n]:
            break
        n0 = n
    return PsiBoundCheck(h=h, log_psi=lp, verdicts=verdicts, n0=n0)


def chernoff_check(
    n_max: int = 200,
    p_grid: Sequence[float] = DEFAULT_P_GRID,
    alpha_fractions: Sequence[float] = DEFAULT_ALPHA_FRACTIONS,
    rtol: float = 1e-9,
) -> ChernoffCheck:
    """
    Check P(Binom(n, p) <= alpha n) <= exp(-n I_p(alpha)) with alpha = f p for
    every n <= n_max, p in p_grid and f in alpha_fractions.
    """
    violations = []
    worst = 0.0
    cases = 0
    for p in p_grid:
        for n in range(1, n_max + 1):
            terms = [math.comb(n, k) * p**k * (1.0 - p) ** (n - k) for k in range(n + 1)]
            for fraction in alpha_fractions:
                alpha = fraction * p
                m = math.floor(alpha * n)
                tail = math.fsum(terms[: m + 1])
                bound = math.exp(-n * rate_function(p, alpha))
                cases += 1
                ratio = tail / bound
                worst = max(worst, ratio)
                if tail > bound * (1.0 + rtol):
                    violations.append(ChernoffCase(n=n, p=p, alpha=alpha, tail=tail, bound=bound))
    if violations:
        log.warning(f"Chernoff bound violated in {len(violations)} of {cases} cases")
    return ChernoffCheck(cases=cases, violations=violations, worst_ratio=worst)
