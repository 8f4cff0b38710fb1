# -*- coding: utf-8 -*-
from typing import NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy import stats


class LinearFit(NamedTuple):
    slope: float
    intercept: float
    stderr: float
    ci_low: float
    ci_high: float
    points: int


def mean_ci(values: Sequence[float], confidence: float = 0.95) -> Tuple[float, Optional[float]]:
    """Sample mean and normal-approximation half-width (None below two samples)."""
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        return float("nan"), None
    mean = float(arr.mean())
    if arr.size < 2:
        return mean, None
    z = stats.norm.ppf(0.5 + confidence / 2)
    return mean, float(z * arr.std(ddof=1) / np.sqrt(arr.size))


def proportion_ci(successes: int, trials: int, confidence: float = 0.95):
    if trials == 0:
        return float("nan"), None
    phat = successes / trials
    z = stats.norm.ppf(0.5 + confidence / 2)
    return phat, float(z * np.sqrt(phat * (1 - phat) / trials))


def linear_fit(x: Sequence[float], y: Sequence[float], confidence: float = 0.95) -> LinearFit:
    """Least-squares line with a t-based confidence interval on the slope."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size < 2:
        raise ValueError("A linear fit needs at least two points, got {}".format(x.size))
    res = stats.linregress(x, y)
    if x.size > 2:
        t = stats.t.ppf(0.5 + confidence / 2, df=x.size - 2)
        half = t * res.stderr
    else:
        half = float("inf")
    return LinearFit(
        slope=float(res.slope),
        intercept=float(res.intercept),
        stderr=float(res.stderr),
        ci_low=float(res.slope - half),
        ci_high=float(res.slope + half),
        points=int(x.size),
    )
