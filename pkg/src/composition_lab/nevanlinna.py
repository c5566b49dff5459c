# -*- coding: utf-8 -*-
"""
Nevanlinna counting functions N_φ(w) = Σ_{φ(z)=w} log(1/|z|) and their averages:
window averages over S(ξ,h), the annular Luecking integral and the sub-mean check.

All integrals use the normalized area measure dA = dx dy/π.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from .carleson import PullbackSample
from .exceptions import ConfigurationError, SolverUnavailableError
from .internal.quadrature import gauss_legendre, refine_until_stable
from .internal.trends import GrowthVerdict, divergence_verdict
from .symbols import (
    IdentitySymbol,
    LinearFractionalSymbol,
    MonomialSymbol,
    ScalingSymbol,
    SymbolMap,
    preimages,
)

logger = logging.getLogger(__name__)

MIN_WINDOW_SIZE = 2.0 ** -16
ORIGIN_TOL = 1e-14
MAX_LEVEL = 512


@dataclass
class CountingEvaluation:
    """
    N_φ(w) with the preimages it was summed over.

    Attributes:
        w (complex): Target point
        value (float): N_φ(w)
        preimages (list): (z, multiplicity) pairs, z = 0 excluded
        at_origin_image (bool): w = φ(0); the preimage z = 0 was left out
    """
    w: complex
    value: float
    preimages: List[Tuple[complex, int]] = field(default_factory=list)
    at_origin_image: bool = False


def _require_solver(symbol: SymbolMap) -> None:
    if not symbol.has_preimages:
        raise SolverUnavailableError(f"no solver for symbol kind '{symbol.kind.value}'")


def counting_function(symbol: SymbolMap, w: complex) -> CountingEvaluation:
    """
    Nevanlinna counting function at one point.

    At w = φ(0) the preimage z = 0 is dropped and the result is flagged.

    Args:
        symbol (SymbolMap): Symbol with a preimage solver
        w (complex): Point of the disk

    Returns:
        CountingEvaluation

    Raises:
        SolverUnavailableError: For kinds without a solver
    """
    _require_solver(symbol)
    found = preimages(symbol, w)
    kept = [(z, m) for z, m in found if abs(z) > ORIGIN_TOL]
    flagged = len(kept) != len(found) or abs(complex(symbol.evaluate(np.asarray(0j))) - w) < ORIGIN_TOL
    if flagged:
        logger.warning("N_φ evaluated at w = φ(0) = %s; z = 0 excluded", w)
    value = math.fsum(m * -math.log(abs(z)) for z, m in kept)
    return CountingEvaluation(complex(w), value, kept, flagged)


def counting_values(symbol: SymbolMap, w: np.ndarray) -> np.ndarray:
    """
    N_φ on an array of points, closed form where available.

    Points with w = φ(0) get the value without the z = 0 preimage.

    Args:
        symbol (SymbolMap): Symbol with a preimage solver
        w (np.ndarray): Points of the disk

    Returns:
        np.ndarray: N_φ(w), same shape as w
    """
    _require_solver(symbol)
    w = np.asarray(w, dtype=complex)
    modulus = np.abs(w)
    with np.errstate(divide="ignore"):
        if isinstance(symbol, (IdentitySymbol, MonomialSymbol)):
            return np.where(modulus > ORIGIN_TOL, -np.log(np.maximum(modulus, ORIGIN_TOL)), 0.0)
        if isinstance(symbol, ScalingSymbol):
            inside = (modulus < symbol.s) & (modulus > ORIGIN_TOL)
            return np.where(inside, np.log(symbol.s / np.maximum(modulus, ORIGIN_TOL)), 0.0)
        if isinstance(symbol, LinearFractionalSymbol):
            denom = symbol.a - symbol.c * w
            z = np.where(denom != 0, (symbol.d * w - symbol.b) / np.where(denom != 0, denom, 1.0), 1.0)
            zm = np.abs(z)
            inside = (zm < 1.0 - 1e-14) & (zm > ORIGIN_TOL)
            return np.where(inside, -np.log(np.where(inside, zm, 1.0)), 0.0)
    flat = [counting_function(symbol, complex(v)).value for v in w.ravel()]
    return np.array(flat, dtype=float).reshape(w.shape)


def counting_grid(symbol: SymbolMap, size: int) -> List[Dict[str, float]]:
    """
    N_φ on the points of a size × size grid of [-1, 1]² that lie in the disk.

    Returns:
        Rows {"x", "y", "N"}
    """
    if size < 2:
        raise ConfigurationError(f"grid size must be >= 2, got {size}")
    axis = np.linspace(-1.0, 1.0, size)
    x, y = np.meshgrid(axis, axis)
    points = (x + 1j * y).ravel()
    points = points[np.abs(points) < 1.0 - 1e-12]
    values = counting_values(symbol, points)
    return [{"x": float(p.real), "y": float(p.imag), "N": float(v)} for p, v in zip(points, values)]


def window_average(symbol: SymbolMap, xi: complex, h: float, level: Optional[int] = None) -> float:
    """
    (1/A(S)) ∫_S N_φ dA over S = S(ξ, h) ∩ 𝔻.

    Uses polar coordinates around ξ, z = ξ(1 - ρe^{iβ}), where S ∩ 𝔻 is ρ <= h and
    |β| < arccos(ρ/2). Gauss-Legendre in both variables; the level doubles until
    successive values agree to 1e-3 relative, unless a fixed level is given.

    Args:
        symbol (SymbolMap): Symbol with a preimage solver
        xi (complex): Unimodular center
        h (float): Radius, 2^-16 <= h <= 1
        level (int, optional): Fixed quadrature level

    Returns:
        float: Window average of N_φ

    Raises:
        ConfigurationError: If h is out of range or ξ is not unimodular
        NumericalError: If the quadrature does not stabilize
    """
    _require_solver(symbol)
    if not MIN_WINDOW_SIZE <= h <= 1.0:
        raise ConfigurationError(f"window radius must lie in [2^-16, 1], got {h}")
    xi = complex(xi)
    if abs(abs(xi) - 1.0) > 1e-12:
        raise ConfigurationError(f"window center must be unimodular, got {xi}")

    def average(q: int) -> float:
        rho, w_rho = gauss_legendre(q, 0.0, h)
        half = np.arccos(rho / 2.0)
        beta, w_beta = gauss_legendre(q, -half, half)
        z = xi * (1.0 - rho[:, None] * np.exp(1j * beta))
        weights = w_rho[:, None] * w_beta * rho[:, None]
        values = counting_values(symbol, z)
        return float(np.sum(weights * values) / np.sum(weights))

    if level is not None:
        return average(int(level))
    value, _, _ = refine_until_stable(average, start=8, max_level=MAX_LEVEL, atol=1e-14)
    return value


def _disk_mean(symbol: SymbolMap, a: complex, r: float, q: float, level: int) -> float:
    rho, w_rho = gauss_legendre(level, 0.0, r)
    count = 4 * level
    theta = 2.0 * np.pi * np.arange(count) / count
    z = a + rho[:, None] * np.exp(1j * theta)
    values = counting_values(symbol, z) ** q
    return float(np.sum(w_rho[:, None] * rho[:, None] * values) / (count * np.sum(w_rho * rho)))


def submean_check(symbol: SymbolMap, a: complex, r: float, q: float) -> Tuple[float, float, float]:
    """
    Compare [N_φ(a)]^q with the disk mean (1/A(D)) ∫_D N_φ^q dA over D = D(a, r).

    Args:
        symbol (SymbolMap): Symbol with a preimage solver
        a (complex): Disk center
        r (float): Disk radius
        q (float): Exponent > 0

    Returns:
        (lhs, rhs, lhs/rhs)

    Raises:
        ConfigurationError: If D leaves the disk or contains 0 or φ(0)
    """
    _require_solver(symbol)
    a = complex(a)
    if q <= 0 or r <= 0:
        raise ConfigurationError("submean check needs q > 0 and r > 0")
    if abs(a) + r >= 1.0:
        raise ConfigurationError(f"D({a}, {r}) leaves the unit disk")
    origin_image = complex(symbol.evaluate(np.asarray(0j)))
    if abs(a) <= r or abs(a - origin_image) <= r:
        raise ConfigurationError(f"D({a}, {r}) contains 0 or φ(0), where N_φ is excluded")
    lhs = float(counting_values(symbol, np.asarray([a]))[0] ** q)
    rhs, _, _ = refine_until_stable(lambda lv: _disk_mean(symbol, a, r, q, lv), start=8, max_level=MAX_LEVEL,
                                    rtol=1e-6, atol=1e-14)
    ratio = lhs / rhs if rhs > 0 else (0.0 if lhs == 0 else math.inf)
    return lhs, rhs, ratio


@dataclass
class LueckingIntegral:
    """Annular partial integrals of the Luecking condition in its two weightings."""
    p: float
    depths: List[int]
    lambda_form: List[float]
    proof_form: List[float]
    lambda_verdict: GrowthVerdict
    proof_verdict: GrowthVerdict
    converged: bool = True

    @property
    def verdict(self) -> GrowthVerdict:
        if self.lambda_verdict is self.proof_verdict:
            return self.lambda_verdict
        return GrowthVerdict.DIVERGING

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "depths": self.depths,
            "lambda_form": self.lambda_form,
            "proof_form": self.proof_form,
            "lambda_verdict": self.lambda_verdict.value,
            "proof_verdict": self.proof_verdict.value,
            "converged": self.converged,
        }


def _shell_integrals(symbol: SymbolMap, p: float, r0: float, r1: float, level: int) -> Tuple[float, float]:
    radii, w_r = gauss_legendre(level, r0, r1)
    count = 8 * level
    theta = 2.0 * np.pi * np.arange(count) / count
    z = radii[:, None] * np.exp(1j * theta)
    n_vals = counting_values(symbol, z)
    gap = 1.0 - radii[:, None]
    log_inv = -np.log(radii)[:, None]
    area = (w_r * radii)[:, None] * (2.0 / count)  # dA = r dr dθ/π
    lam = np.sum(area * (n_vals / log_inv) ** (p / 2.0) / gap ** 2)
    proof = np.sum(area * n_vals ** (p / 2.0) / gap ** (p / 2.0 + 2.0))
    return float(lam), float(proof)


def luecking_integral(symbol: SymbolMap, p: float, depth: int) -> LueckingIntegral:
    """
    Partial integrals over {1/2 <= |z| <= 1 - 2^{-k}}, k = 2..depth, of

        (N_φ(z)/log(1/|z|))^{p/2} dλ,  dλ = (1 - |z|)^{-2} dA, and
        N_φ(z)^{p/2} (1 - |z|)^{-p/2-2} dA.

    Each dyadic shell is integrated with Gauss-Legendre in r and a uniform grid in θ,
    doubling until both forms agree to 1e-3 relative.

    Args:
        symbol (SymbolMap): Symbol with a preimage solver
        p (float): Schatten exponent > 0
        depth (int): Deepest k, >= 3

    Returns:
        LueckingIntegral with divergence verdicts
    """
    _require_solver(symbol)
    if p <= 0:
        raise ConfigurationError(f"Schatten exponent must be positive, got {p}")
    if depth < 3:
        raise ConfigurationError(f"annulus depth must be >= 3, got {depth}")

    lam_total = proof_total = 0.0
    lam_sums, proof_sums = [], []
    converged = True
    for k in range(2, depth + 1):
        r0, r1 = 1.0 - 2.0 ** -(k - 1), 1.0 - 2.0 ** -k
        cache: Dict[int, Tuple[float, float]] = {}

        def both(level: int) -> Tuple[float, float]:
            if level not in cache:
                cache[level] = _shell_integrals(symbol, p, r0, r1, level)
            return cache[level]

        lam, level, ok_lam = refine_until_stable(lambda lv: both(lv)[0], start=8, max_level=MAX_LEVEL,
                                                 atol=1e-14, strict=False)
        proof, _, ok_proof = refine_until_stable(lambda lv: both(lv)[1], start=8, max_level=MAX_LEVEL,
                                                 atol=1e-14, strict=False)
        converged = converged and ok_lam and ok_proof
        lam_total += lam
        proof_total += proof
        lam_sums.append(lam_total)
        proof_sums.append(proof_total)
    return LueckingIntegral(
        p=float(p),
        depths=list(range(2, depth + 1)),
        lambda_form=lam_sums,
        proof_form=proof_sums,
        lambda_verdict=divergence_verdict(lam_sums),
        proof_verdict=divergence_verdict(proof_sums),
        converged=converged,
    )


def luecking_window_ratios(
    symbol: SymbolMap,
    sample: PullbackSample,
    level: int,
    inflation: int = 2,
    points: int = 4
) -> Dict[str, float]:
    """
    Compare sup of N_φ on each Luecking window R_{n,j} with m_φ of the inflated window.

    The inflated window is the annular window centered at e^{2πij/2^n} with size
    π·2^{K-n}, which contains R_{n,j} for every K >= 0.

    Args:
        symbol (SymbolMap): Symbol with a preimage solver
        sample (PullbackSample): Pull-back sample of the same symbol
        level (int): n >= 1
        inflation (int): K >= 0
        points (int): Probe points per side of each window

    Returns:
        dict with "max_ratio" over windows with positive inflated mass and
        "unmatched" windows where N_φ > 0 but the inflated mass is 0
    """
    _require_solver(symbol)
    if level < 1 or inflation < 0:
        raise ConfigurationError("Luecking windows need level >= 1 and inflation >= 0")
    bands = 2 ** level
    size = min(np.pi, np.pi * 2.0 ** (inflation - level))

    radial = np.linspace(1.0 - 2.0 ** -level, 1.0 - 2.0 ** -(level + 1), points, endpoint=False)
    offsets = (np.arange(points) + 0.5) / points - 0.5
    max_ratio, unmatched = 0.0, 0
    for j in range(bands):
        angles = 2.0 * np.pi * (j + offsets) / bands
        probes = (radial[:, None] * np.exp(1j * angles)).ravel()
        n_max = float(np.max(counting_values(symbol, probes)))
        rel = np.abs(np.angle(sample.values * np.exp(-2j * np.pi * j / bands)))
        mass = np.count_nonzero((sample.modulus >= 1.0 - size) & (rel <= size)) / sample.size
        if mass > 0:
            max_ratio = max(max_ratio, n_max / mass)
        elif n_max > 0:
            unmatched += 1
    return {"level": level, "inflation": inflation, "max_ratio": max_ratio, "unmatched": unmatched}


def ray_decay(symbol: SymbolMap, theta: float, radii: np.ndarray) -> np.ndarray:
    """N_φ along the ray r·e^{iθ}; tends to 0 as r → 1 for every zoo symbol."""
    return counting_values(symbol, np.asarray(radii, dtype=float) * np.exp(1j * theta))
