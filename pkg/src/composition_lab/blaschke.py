# -*- coding: utf-8 -*-
"""
Finite Blaschke factors with equidistributed zeros, the slow Blaschke product and
pseudo-hyperbolic geometry.

A slow Blaschke product B(z) = z^N ∏_{n>=7} B_n(z) satisfies 1 - |B(z)| >= δ(1 - |z|)
on the whole disk. B_n has p_n zeros equidistributed on the circle of radius
r_n = 1 - h_n, with h_n = 2^{-m_n} chosen on a dyadic grid.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple, Union

import numpy as np

from .exceptions import ConfigurationError, NumericalError
from .orlicz import DecayFunction, delta_from_psi

logger = logging.getLogger(__name__)

ComplexLike = Union[complex, np.ndarray]

START_INDEX = 7
DEFAULT_DEPTH = 24
# r_n = 1 - 2^{-m} must stay distinguishable from 1
MAX_DYADIC_EXPONENT = 52
LOG_POLAR_THRESHOLD = 10_000
CHI_GRID_POINTS = 4096


@dataclass(frozen=True)
class EquidistributedFactor:
    """
    Finite Blaschke product with p zeros r·e^{2πik/p}.

    Attributes:
        p (int): Zero count
        r (float): Zero radius in (0, 1)
    """
    p: int
    r: float

    def __post_init__(self):
        if int(self.p) != self.p or self.p < 1:
            raise ConfigurationError(f"factor zero count must be a positive integer, got {self.p}")
        if not 0.0 < self.r < 1.0:
            raise ConfigurationError(f"factor radius must lie in (0, 1), got {self.r}")

    def zeros(self) -> np.ndarray:
        k = np.arange(1, self.p + 1)
        return self.r * np.exp(2j * np.pi * k / self.p)

    def to_dict(self) -> dict:
        return {"p": int(self.p), "r": float(self.r)}


def _power(z: np.ndarray, p: int) -> np.ndarray:
    """z^p, in log-polar form once p is large."""
    if p <= LOG_POLAR_THRESHOLD:
        return np.power(z, p)
    with np.errstate(divide="ignore"):
        modulus = np.exp(p * np.log(np.abs(z)))
    angle = np.fmod(p * np.angle(z), 2.0 * np.pi)
    return modulus * np.exp(1j * angle)


def eval_factor(factor: EquidistributedFactor, z: ComplexLike) -> ComplexLike:
    """
    Evaluate the closed form G(z) = (z^p - r^p) / ((rz)^p - 1).

    Args:
        factor (EquidistributedFactor): The factor
        z: Point(s) with |z| <= 1

    Returns:
        G(z), complex or complex array matching the input
    """
    arr = np.asarray(z, dtype=complex)
    p = int(factor.p)
    zp = _power(arr, p)
    rp = math.exp(p * math.log1p(factor.r - 1.0))
    out = (zp - rp) / (rp * zp - 1.0)
    return complex(out) if out.ndim == 0 else out


def eval_factor_product(factor: EquidistributedFactor, z: ComplexLike) -> ComplexLike:
    """
    Evaluate the factor as the product of its p Möbius terms (r - e^{-iθ_k} z)/(1 - r e^{-iθ_k} z).

    Quadratic in p; used as an oracle for eval_factor.
    """
    arr = np.asarray(z, dtype=complex)
    k = np.arange(1, factor.p + 1)
    rot = np.exp(-2j * np.pi * k / factor.p)
    w = np.multiply.outer(arr, rot)
    out = np.prod((factor.r - w) / (1.0 - factor.r * w), axis=-1)
    return complex(out) if out.ndim == 0 else out


def factor_circle_bound(p: int, r: float) -> float:
    """Sharp bound 2r^p/(1 + r^{2p}) for |G| on the circle |z| = r."""
    rp = r ** p
    return 2.0 * rp / (1.0 + rp * rp)


def near_boundary_bound(p: int, h: float) -> float:
    """Bound 1 - (ph)^2/(2e) for |G| on |z| = 1 - h, valid when p·h <= 1/2."""
    if p * h > 0.5:
        raise ConfigurationError(f"near-boundary bound needs p·h <= 1/2, got {p * h}")
    return 1.0 - (p * h) ** 2 / (2.0 * math.e)


def minimal_zero_count(h: float, n: int) -> int:
    """
    Smallest positive integer p with p²h²/(2e) > 2^{-n}.

    Args:
        h (float): 1 - r
        n (int): Level index

    Returns:
        int: p_n
    """
    target = 2.0 ** -n

    def passes(p: int) -> bool:
        return (p * h) ** 2 / (2.0 * math.e) > target

    p = max(1, int(math.sqrt(2.0 * math.e * target) / h))
    while p > 1 and passes(p - 1):
        p -= 1
    while not passes(p):
        p += 1
    return p


def monomial_exponent(h6: float) -> int:
    """
    Smallest N with (1 - h6)^N < 1/2.

    Args:
        h6 (float): Threshold 1 - r_6

    Returns:
        int: N
    """
    log_r = math.log1p(-h6)

    def passes(n: int) -> bool:
        return math.exp(n * log_r) < 0.5

    n = max(1, math.ceil(math.log(0.5) / log_r))
    while n > 1 and passes(n - 1):
        n -= 1
    while not passes(n):
        n += 1
    return n


@dataclass(frozen=True)
class SlowBlaschkeSpec:
    """
    Data of a slow Blaschke product truncated at depth M.

    Attributes:
        delta: Decay rate the product is built for (None when loaded without one)
        depth (int): Truncation depth M
        h_exponents (dict): n -> m_n with h_n = 2^{-m_n}, for 6 <= n <= M
        p_counts (dict): n -> p_n, for 7 <= n <= M
        monomial_exponent (int): N with r_6^N < 1/2
    """
    delta: Optional[DecayFunction] = field(compare=False)
    depth: int
    h_exponents: Dict[int, int]
    p_counts: Dict[int, int]
    monomial_exponent: int
    start_index: int = START_INDEX

    def h(self, n: int) -> float:
        return 2.0 ** -self.h_exponents[n]

    def r(self, n: int) -> float:
        return 1.0 - self.h(n)

    def factors(self) -> Tuple[EquidistributedFactor, ...]:
        return tuple(
            EquidistributedFactor(self.p_counts[n], self.r(n))
            for n in range(self.start_index, self.depth + 1)
        )

    @property
    def certified_gap(self) -> float:
        """Smallest 1 - |z| covered by the truncation certificate."""
        return 2.0 ** (-self.depth + 1)

    def check_invariants(self) -> None:
        """
        Verify the construction invariants.

        Raises:
            NumericalError: Naming the first violated invariant
        """
        ns = range(self.start_index, self.depth + 1)
        exps = [self.h_exponents[n] for n in range(self.start_index - 1, self.depth + 1)]
        if any(b <= a for a, b in zip(exps, exps[1:])):
            raise NumericalError("h_n is not strictly decreasing")
        for n in ns:
            h, p = self.h(n), self.p_counts[n]
            if self.h_exponents[n] < 2 * n:
                raise NumericalError(f"h_{n} exceeds 2^(-2n)")
            if p != minimal_zero_count(h, n):
                raise NumericalError(f"p_{n} = {p} is not minimal")
            if p * h > math.sqrt(8.0 * math.e * 2.0 ** -n) or p * h > 0.5:
                raise NumericalError(f"p_{n}·h_{n} = {p * h} breaks the zero-density bound")
            if self.delta is not None and _chi(self.delta, h, True) > 2.0 ** -n:
                raise NumericalError(f"χ(h_{n}) exceeds 2^(-{n})")
        if math.exp(self.monomial_exponent * math.log1p(-self.h(6))) >= 0.5:
            raise NumericalError("r_6^N is not below 1/2")

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "start_index": self.start_index,
            "h_exponents": {str(n): m for n, m in sorted(self.h_exponents.items())},
            "p_counts": {str(n): p for n, p in sorted(self.p_counts.items())},
            "monomial_exponent": self.monomial_exponent,
            "delta": None if self.delta is None else self.delta.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'SlowBlaschkeSpec':
        """
        Rebuild a spec from its JSON form.

        Args:
            data (dict): Output of to_dict

        Returns:
            SlowBlaschkeSpec: Spec, with δ re-derived when it came from an Orlicz function

        Raises:
            ConfigurationError: If keys are missing or unknown
        """
        from .config import load_orlicz_spec

        allowed = {"depth", "start_index", "h_exponents", "p_counts", "monomial_exponent", "delta"}
        unknown = set(data) - allowed
        if unknown:
            raise ConfigurationError(f"Unknown slow Blaschke keys: {sorted(unknown)}")
        try:
            delta = None
            delta_data = data.get("delta")
            if delta_data and delta_data.get("psi") is not None:
                delta = delta_from_psi(load_orlicz_spec(delta_data["psi"]))
            spec = cls(
                delta=delta,
                depth=int(data["depth"]),
                h_exponents={int(n): int(m) for n, m in data["h_exponents"].items()},
                p_counts={int(n): int(p) for n, p in data["p_counts"].items()},
                monomial_exponent=int(data["monomial_exponent"]),
                start_index=int(data.get("start_index", START_INDEX)),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigurationError(f"Malformed slow Blaschke spec: {str(e)}") from e
        return spec


def _chi(delta: DecayFunction, x: float, monotone: bool) -> float:
    if monotone:
        return max(2.0 * delta(x), math.sqrt(x))
    grid = np.geomspace(max(x * 2.0 ** -200, np.finfo(float).tiny), x, CHI_GRID_POINTS)
    return float(np.max(np.maximum(2.0 * delta(grid), np.sqrt(grid))))


def build_slow_blaschke(delta: DecayFunction, depth: int = DEFAULT_DEPTH) -> SlowBlaschkeSpec:
    """
    Construct the data of a slow Blaschke product for a decay rate δ.

    h_n is the largest dyadic value below h_{n-1} with χ(h_n) <= 2^{-n}, p_n is the
    minimal zero count with p_n²h_n²/(2e) > 2^{-n}, and N is minimal with r_6^N < 1/2.

    Args:
        delta (DecayFunction): Target decay rate
        depth (int): Truncation depth M >= 8

    Returns:
        SlowBlaschkeSpec: Spec satisfying all construction invariants

    Raises:
        ConfigurationError: If depth < 8
        NumericalError: If χ(h) <= 2^{-M} needs h below the float resolution of r = 1 - h
    """
    if int(depth) != depth or depth < 8:
        raise ConfigurationError(f"truncation depth must be an integer >= 8, got {depth}")
    monotone = delta.is_monotone()
    if not monotone:
        logger.warning("δ is not monotone on probes; χ falls back to a %d-point sup", CHI_GRID_POINTS)

    exponents: Dict[int, int] = {}
    previous = 0
    for n in range(START_INDEX - 1, depth + 1):
        m = max(previous + 1, 2 * n)
        while _chi(delta, 2.0 ** -m, monotone) > 2.0 ** -n:
            m += 1
            if m > MAX_DYADIC_EXPONENT:
                raise NumericalError(
                    f"χ(h) <= 2^-{n} needs h < 2^-{MAX_DYADIC_EXPONENT}; "
                    f"δ decays too slowly for depth {depth} at double precision"
                )
        exponents[n] = m
        previous = m

    counts = {n: minimal_zero_count(2.0 ** -exponents[n], n) for n in range(START_INDEX, depth + 1)}
    spec = SlowBlaschkeSpec(
        delta=delta,
        depth=depth,
        h_exponents=exponents,
        p_counts=counts,
        monomial_exponent=monomial_exponent(2.0 ** -exponents[START_INDEX - 1]),
    )
    spec.check_invariants()
    logger.info(
        "slow Blaschke product built: depth %d, N = %d, p_%d = %d",
        depth, spec.monomial_exponent, depth, counts[depth]
    )
    return spec


def eval_slow_blaschke(spec: SlowBlaschkeSpec, z: ComplexLike) -> ComplexLike:
    """
    Evaluate the truncated product z^N ∏_{n=7}^{M} B_n(z).

    Omitted factors have modulus <= 1, so the returned modulus bounds |B(z)| from above.

    Args:
        spec (SlowBlaschkeSpec): Product data
        z: Point(s) with |z| <= 1

    Returns:
        Truncated value, complex or array matching the input
    """
    arr = np.asarray(z, dtype=complex)
    out = _power(arr, spec.monomial_exponent)
    for factor in spec.factors():
        out = out * eval_factor(factor, arr)
    return complex(out) if np.ndim(out) == 0 else out


def certify_slow_blaschke(spec: SlowBlaschkeSpec, z: ComplexLike) -> Tuple[np.ndarray, np.ndarray]:
    """
    Margins 1 - |B_trunc(z)| - δ(1 - |z|) and the mask of points the truncation certifies.

    Args:
        spec (SlowBlaschkeSpec): Product data with δ attached
        z: Interior points

    Returns:
        (margins, covered): Arrays; covered marks 1 - |z| >= 2^{-M+1}

    Raises:
        ConfigurationError: If the spec carries no δ or a point lies outside the disk
    """
    if spec.delta is None:
        raise ConfigurationError("certificate needs the decay rate the spec was built for")
    arr = np.atleast_1d(np.asarray(z, dtype=complex))
    gap = 1.0 - np.abs(arr)
    if np.any(gap <= 0):
        raise ConfigurationError("certificate points must lie in the open disk")
    margins = 1.0 - np.abs(eval_slow_blaschke(spec, arr)) - spec.delta(gap)
    return margins, gap >= spec.certified_gap


def blaschke_sum_bound(spec: SlowBlaschkeSpec) -> Tuple[float, float]:
    """Partial Blaschke sum Σ p_n h_n against Σ √(8e·2^{-n}) over the stored levels."""
    ns = range(spec.start_index, spec.depth + 1)
    total = math.fsum(spec.p_counts[n] * spec.h(n) for n in ns)
    bound = math.fsum(math.sqrt(8.0 * math.e * 2.0 ** -n) for n in ns)
    return total, bound


def pseudo_hyperbolic(u: ComplexLike, v: ComplexLike) -> Union[float, np.ndarray]:
    """
    Pseudo-hyperbolic distance |u - v| / |1 - conj(u) v|.

    Args:
        u, v: Points of the open disk (broadcast)

    Returns:
        Distance in [0, 1)

    Raises:
        ConfigurationError: If a point lies outside the open disk
    """
    a = np.asarray(u, dtype=complex)
    b = np.asarray(v, dtype=complex)
    if np.any(np.abs(a) >= 1) or np.any(np.abs(b) >= 1):
        raise ConfigurationError("pseudo-hyperbolic distance needs points of the open disk")
    out = np.abs(a - b) / np.abs(1.0 - np.conj(a) * b)
    return float(out) if out.ndim == 0 else out


def strong_triangle_gap(a: ComplexLike, b: ComplexLike, c: ComplexLike) -> Union[float, np.ndarray]:
    """
    (d(a,c) + d(c,b)) / (1 + d(a,c)d(c,b)) - d(a,b); nonnegative for every triple.
    """
    dac = pseudo_hyperbolic(a, c)
    dcb = pseudo_hyperbolic(c, b)
    return (dac + dcb) / (1.0 + dac * dcb) - pseudo_hyperbolic(a, b)
