# -*- coding: utf-8 -*-
"""
Polynomial root finding for preimage solvers.

Companion-matrix eigenvalues, Newton polish, then clustering of near-equal roots
into multiplicities.
"""

import logging
from typing import List, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from ..exceptions import NumericalError

logger = logging.getLogger(__name__)

POLISH_TOL = 1e-12
POLISH_ITERATIONS = 50
# roots closer than this are reported once with multiplicity
CLUSTER_TOL = 1e-6


def polynomial_roots(coeffs: np.ndarray) -> np.ndarray:
    """
    All complex roots of a polynomial given by ascending coefficients.

    Args:
        coeffs (np.ndarray): c_0, c_1, ..., c_d with c_d != 0

    Returns:
        np.ndarray: d roots, Newton-polished

    Raises:
        NumericalError: If the leading coefficient vanishes
    """
    coeffs = np.trim_zeros(np.asarray(coeffs, dtype=complex), "b")
    if coeffs.size == 0 or coeffs[-1] == 0:
        raise NumericalError("polynomial has no leading coefficient")
    if coeffs.size == 1:
        return np.empty(0, dtype=complex)
    if coeffs.size == 2:
        return np.array([-coeffs[0] / coeffs[1]])
    roots = P.polyroots(coeffs)
    return newton_polish(coeffs, roots)


def newton_polish(coeffs: np.ndarray, roots: np.ndarray) -> np.ndarray:
    """Newton steps on each root until the step drops below POLISH_TOL relative."""
    deriv = P.polyder(coeffs)
    z = np.array(roots, dtype=complex)
    for _ in range(POLISH_ITERATIONS):
        d = P.polyval(z, deriv)
        safe = np.abs(d) > 0
        step = np.zeros_like(z)
        step[safe] = P.polyval(z[safe], coeffs) / d[safe]
        # double roots: Newton stalls at sqrt(eps) and may wander; keep the eigenvalue
        step[np.abs(step) > 1e-3 * np.maximum(1.0, np.abs(z))] = 0.0
        z = z - step
        if np.all(np.abs(step) <= POLISH_TOL * np.maximum(1.0, np.abs(z))):
            break
    return z


def cluster_roots(roots: np.ndarray, tol: float = CLUSTER_TOL) -> List[Tuple[complex, int]]:
    """
    Merge roots closer than tol into (centroid, multiplicity) pairs.

    Args:
        roots (np.ndarray): Roots, possibly with repeated entries
        tol (float): Merge distance

    Returns:
        List of (root, multiplicity), in input order of first appearance
    """
    remaining = list(np.asarray(roots, dtype=complex))
    clusters = []
    while remaining:
        seed = remaining.pop(0)
        members = [seed]
        keep = []
        for z in remaining:
            (members if abs(z - seed) < tol else keep).append(z)
        remaining = keep
        if len(members) > 1:
            logger.debug("merged %d roots near %s", len(members), seed)
        clusters.append((complex(np.mean(members)), len(members)))
    return clusters
