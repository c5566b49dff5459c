# -*- coding: utf-8 -*-
"""
Finite-range heuristics for divergence and decay of numerical sequences.

These classify finite sweeps; they are evidence, never proof.
"""

from enum import Enum
from typing import Sequence

import numpy as np

# last-half slope must keep this share of the first-half mean increment
LINEAR_SHARE = 0.75
VANISHING_RATIO = 0.25
BOUNDED_RATIO = 0.5


class GrowthVerdict(Enum):
    DIVERGING = "diverging"
    STABILIZING = "stabilizing"


class Trend(Enum):
    TO_ZERO = "to-zero"
    BOUNDED_AWAY = "bounded-away"
    INCONCLUSIVE = "inconclusive"


def divergence_verdict(partial_sums: Sequence[float]) -> GrowthVerdict:
    """
    Flag partial sums as diverging when they grow at least linearly over the last half.

    The least-squares slope of S_n over the last half must be positive and at least
    LINEAR_SHARE times the mean increment over the first half. Decaying increments
    (Σ 1/n², Σ 0.9^n) fail this; constant or growing ones pass.

    Args:
        partial_sums: S_1, ..., S_n

    Returns:
        GrowthVerdict
    """
    sums = np.asarray(partial_sums, dtype=float)
    if sums.size < 3 or not np.isfinite(sums[-1]):
        return GrowthVerdict.DIVERGING if sums.size and np.isinf(sums[-1]) else GrowthVerdict.STABILIZING
    if sums[-1] <= 0:
        return GrowthVerdict.STABILIZING
    increments = np.diff(sums, prepend=0.0)
    half = sums.size // 2
    head = float(np.mean(increments[:half]))
    tail = sums[-(half + 1):]
    slope = float(np.polyfit(np.arange(tail.size, dtype=float), tail, 1)[0])
    if slope > 0 and slope >= LINEAR_SHARE * max(head, 0.0):
        return GrowthVerdict.DIVERGING
    return GrowthVerdict.STABILIZING


def thirds_trend(values: Sequence[float]) -> Trend:
    """
    Compare the first and last thirds of a sweep ordered toward the limit.

    "to-zero" when the last-third mean is below 0.25 × the first-third mean (or is 0),
    "bounded-away" when the last-third minimum exceeds 0.5 × the first-third mean.

    Args:
        values: Sweep ordered so the limit is approached at the end

    Returns:
        Trend
    """
    arr = np.asarray(values, dtype=float)
    if arr.size < 3:
        return Trend.INCONCLUSIVE
    third = max(1, arr.size // 3)
    head = float(np.mean(arr[:third]))
    tail = arr[-third:]
    tail_mean = float(np.mean(tail))
    if tail_mean == 0.0 or tail_mean < VANISHING_RATIO * head:
        return Trend.TO_ZERO
    if float(np.min(tail)) > BOUNDED_RATIO * head:
        return Trend.BOUNDED_AWAY
    return Trend.INCONCLUSIVE
