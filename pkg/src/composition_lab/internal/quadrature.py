# -*- coding: utf-8 -*-
"""
Gauss-Legendre rules and level-doubling refinement.
"""

import logging
from functools import lru_cache
from typing import Callable, Tuple

import numpy as np
from numpy.polynomial import legendre

from ..exceptions import NumericalError

logger = logging.getLogger(__name__)

REFINE_RTOL = 1e-3


@lru_cache(maxsize=64)
def _reference_rule(n: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = legendre.leggauss(n)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_legendre(n: int, a, b) -> Tuple[np.ndarray, np.ndarray]:
    """
    n-point Gauss-Legendre rule on [a, b]; a and b may be arrays (broadcast).

    Returns:
        (nodes, weights): Arrays of shape broadcast(a, b) + (n,)
    """
    x, w = _reference_rule(int(n))
    a = np.asarray(a, dtype=float)[..., None]
    b = np.asarray(b, dtype=float)[..., None]
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def refine_until_stable(
    evaluate: Callable[[int], float],
    start: int = 8,
    max_level: int = 1024,
    rtol: float = REFINE_RTOL,
    atol: float = 1e-300,
    strict: bool = True
) -> Tuple[float, int, bool]:
    """
    Double the quadrature level until successive values agree.

    Args:
        evaluate: level -> value
        start (int): First level
        max_level (int): Last level tried
        rtol (float): Relative agreement target
        atol (float): Absolute agreement that also counts as stable
        strict (bool): Raise instead of returning an unconverged value

    Returns:
        (value, level, converged)

    Raises:
        NumericalError: If strict and the levels never agree
    """
    level = start
    previous = evaluate(level)
    while level * 2 <= max_level:
        level *= 2
        value = evaluate(level)
        if abs(value - previous) <= max(rtol * abs(value), atol):
            logger.debug("quadrature stable at level %d: %.12g", level, value)
            return value, level, True
        previous = value
    if strict:
        raise NumericalError(f"quadrature did not stabilize up to level {max_level}")
    logger.warning("quadrature unconverged at level %d, keeping %.6g", level, previous)
    return previous, level, False
