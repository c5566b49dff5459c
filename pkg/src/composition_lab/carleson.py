# -*- coding: utf-8 -*-
"""
Empirical pull-back measures m_φ and their Carleson windows.

A PullbackSample pushes the uniform grid θ_i = 2πi/M of the circle through the radial
boundary values of φ; every window query is a sample fraction with binomial standard
error. Also hosts Luecking sums, the closed-range test and the f_N test functions.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate, special

from .exceptions import ConfigurationError, NumericalError, StatisticalFloorError
from .internal.trends import GrowthVerdict, divergence_verdict
from .symbols import SymbolMap, radial_boundary_value

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * np.pi
MIN_SAMPLES = 2 ** 10
MAX_UNCONVERGED = 0.01
# windows below this many expected samples are flagged
MIN_WINDOW_COUNT = 10
FLOOR_SAMPLES = 10.0
CENTER_DENSITY = 8.0 * np.pi


class WindowForm(Enum):
    """Window shapes."""
    ANNULAR = "W"
    DISK = "S"
    DYADIC = "dyadic"
    LUECKING = "luecking"


def band_index(angles: np.ndarray, n: int) -> np.ndarray:
    """
    Dyadic band j with (2j-1)π/2^n <= θ < (2j+1)π/2^n (mod 2π).

    Args:
        angles (np.ndarray): Angles in radians, any branch
        n (int): Level

    Returns:
        np.ndarray: Integer band indices in {0, ..., 2^n - 1}
    """
    bands = 2 ** n
    scaled = np.mod(np.asarray(angles, dtype=float), TWO_PI) * bands / TWO_PI + 0.5
    return np.mod(np.floor(scaled).astype(np.int64), bands)


@dataclass(frozen=True)
class CarlesonWindow:
    """
    A Carleson-type window near the unit circle.

    Use the annular, disk, dyadic and luecking constructors.
    """
    form: WindowForm
    center: complex
    size: float
    level: Optional[int] = None
    index: Optional[int] = None

    @classmethod
    def annular(cls, center: complex, size: float) -> 'CarlesonWindow':
        """W(ξ, h): |z| >= 1 - h and |arg(z·conj ξ)| <= h."""
        return cls(WindowForm.ANNULAR, _unimodular(center), _size(size))

    @classmethod
    def disk(cls, center: complex, size: float) -> 'CarlesonWindow':
        """S(ξ, h): |z - ξ| <= h."""
        return cls(WindowForm.DISK, _unimodular(center), _size(size))

    @classmethod
    def dyadic(cls, level: int, index: int) -> 'CarlesonWindow':
        """W_{n,j}: 1 - 2^{-n} <= |z| and θ in the j-th band of level n."""
        return cls(WindowForm.DYADIC, *_band(level, index))

    @classmethod
    def luecking(cls, level: int, index: int) -> 'CarlesonWindow':
        """R_{n,j}: 1 - 2^{-n} <= |z| < 1 - 2^{-n-1} and θ in the j-th band of level n."""
        return cls(WindowForm.LUECKING, *_band(level, index))

    def contains(self, z: np.ndarray) -> np.ndarray:
        """
        Membership test.

        Args:
            z (np.ndarray): Points

        Returns:
            np.ndarray: Boolean mask
        """
        z = np.asarray(z, dtype=complex)
        modulus = np.abs(z)
        if self.form is WindowForm.ANNULAR:
            return (modulus >= 1.0 - self.size) & (np.abs(np.angle(z * np.conj(self.center))) <= self.size)
        if self.form is WindowForm.DISK:
            return np.abs(z - self.center) <= self.size
        inner = 1.0 - 2.0 ** -self.level
        in_band = band_index(np.angle(z), self.level) == self.index
        if self.form is WindowForm.DYADIC:
            return (modulus >= inner) & (modulus <= 1.0 + 1e-9) & in_band
        return (modulus >= inner) & (modulus < 1.0 - 2.0 ** -(self.level + 1)) & in_band


def _unimodular(center: complex) -> complex:
    center = complex(center)
    if abs(abs(center) - 1.0) > 1e-12:
        raise ConfigurationError(f"window center must be unimodular, got {center}")
    return center


def _size(size: float) -> float:
    if not 0.0 < size < 1.0:
        raise ConfigurationError(f"window size must lie in (0, 1), got {size}")
    return float(size)


def _band(level: int, index: int) -> Tuple[complex, float, int, int]:
    if int(level) != level or level < 0:
        raise ConfigurationError(f"dyadic level must be a nonnegative integer, got {level}")
    if not 0 <= index < 2 ** level:
        raise ConfigurationError(f"band index {index} outside 0..{2 ** level - 1}")
    return np.exp(1j * TWO_PI * index / 2 ** level), 2.0 ** -level, int(level), int(index)


@dataclass(frozen=True, eq=False)
class PullbackSample:
    """
    Empirical pull-back measure m_φ with weights 1/M.

    Attributes:
        values (np.ndarray): φ((1-ε)e^{iθ_i}) on θ_i = 2πi/M
        unconverged (np.ndarray): Radial convergence flags, kept in the measure
        epsilon (float): Radial offset used
        symbol_label (str): Symbol identifier
    """
    values: np.ndarray
    unconverged: np.ndarray
    epsilon: float
    symbol_label: str = ""
    modulus: np.ndarray = field(init=False, repr=False, compare=False)
    angle: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "modulus", np.abs(self.values))
        object.__setattr__(self, "angle", np.mod(np.angle(self.values), TWO_PI))

    @property
    def size(self) -> int:
        return int(self.values.size)

    @property
    def unconverged_fraction(self) -> float:
        return float(np.mean(self.unconverged))

    def fraction(self, mask: np.ndarray) -> Tuple[float, float]:
        """Sample fraction of a mask and its binomial standard error."""
        p = float(np.count_nonzero(mask)) / self.size
        return p, math.sqrt(p * (1.0 - p) / self.size)


def build_pullback(symbol: SymbolMap, samples: int = 2 ** 14, epsilon: Optional[float] = None) -> PullbackSample:
    """
    Sample m_φ by radial boundary values on a uniform angular grid.

    Args:
        symbol (SymbolMap): Symbol
        samples (int): M, a power of two >= 2^10
        epsilon (float, optional): Radial offset, defaults to the symbol's own

    Returns:
        PullbackSample

    Raises:
        ConfigurationError: If M is not a power of two >= 2^10
        NumericalError: If more than 1% of samples are unconverged or a value leaves the disk
    """
    if samples < MIN_SAMPLES or samples & (samples - 1):
        raise ConfigurationError(f"sample count must be a power of two >= {MIN_SAMPLES}, got {samples}")
    theta = TWO_PI * np.arange(samples) / samples
    values, unconverged = radial_boundary_value(symbol, theta, epsilon)
    if np.max(np.abs(values)) > 1.0 + 1e-9:
        raise NumericalError(f"{symbol.label}: boundary sample leaves the closed disk")
    sample = PullbackSample(
        values=values,
        unconverged=unconverged,
        epsilon=symbol.boundary_epsilon if epsilon is None else float(epsilon),
        symbol_label=symbol.label,
    )
    fraction = sample.unconverged_fraction
    if fraction > MAX_UNCONVERGED:
        raise NumericalError(f"{symbol.label}: {fraction:.2%} of boundary samples unconverged")
    if fraction > 0:
        logger.warning("%s: %.3f%% of boundary samples unconverged (kept)", symbol.label, 100 * fraction)
    logger.info("pull-back sample built for %s with M = %d", symbol.label, samples)
    return sample


def region_measure(sample: PullbackSample, window: CarlesonWindow) -> Tuple[float, float]:
    """
    m_φ of a window.

    Args:
        sample (PullbackSample): Pull-back sample
        window (CarlesonWindow): Window

    Returns:
        (measure, stderr)
    """
    return sample.fraction(window.contains(sample.values))


def _window_counts(sample: PullbackSample, h: float, centers: np.ndarray) -> np.ndarray:
    """Counts of W(e^{ic}, h) for each center angle c, by binary search on sorted angles."""
    angles = np.sort(sample.angle[sample.modulus >= 1.0 - h])
    extended = np.concatenate([angles - TWO_PI, angles, angles + TWO_PI])
    upper = np.searchsorted(extended, centers + h, side="right")
    lower = np.searchsorted(extended, centers - h, side="left")
    return upper - lower


def center_grid(h: float, centers: Optional[int] = None) -> np.ndarray:
    """
    Uniform center angles for a sup over ξ; defaults to ⌈8π/h⌉ centers.

    Raises:
        ConfigurationError: If fewer than 2π/h centers are requested
    """
    count = int(math.ceil(CENTER_DENSITY / h)) if centers is None else int(centers)
    if count < TWO_PI / h:
        raise ConfigurationError(f"{count} centers leave gaps between windows of size {h}")
    return TWO_PI * np.arange(count) / count


def rho(sample: PullbackSample, h: float, centers: Optional[int] = None) -> float:
    """
    Carleson function ρ_φ(h) = max over a center grid of m_φ(W(ξ, h)).

    Args:
        sample (PullbackSample): Pull-back sample
        h (float): Window size in (0, 1)
        centers (int, optional): Grid size G >= 2π/h

    Returns:
        float: ρ estimate
    """
    _size(h)
    counts = _window_counts(sample, h, center_grid(h, centers))
    return float(np.max(counts)) / sample.size


def check_resolution(sample: PullbackSample, sizes: Sequence[float]) -> None:
    """
    Raises:
        StatisticalFloorError: If some size is below 10/M
    """
    floor = FLOOR_SAMPLES / sample.size
    small = [h for h in sizes if h < floor]
    if small:
        raise StatisticalFloorError(
            f"window sizes {small} are below the resolution floor 10/M = {floor:.3g}"
        )


def rho_table(sample: PullbackSample, sizes: Sequence[float], centers: Optional[int] = None) -> List[Dict[str, float]]:
    """
    ρ over an h-sweep.

    Returns:
        List of rows {"h", "rho", "stderr"}

    Raises:
        StatisticalFloorError: If some h is below 10/M
    """
    check_resolution(sample, sizes)
    rows = []
    for h in sizes:
        value = rho(sample, h, centers)
        rows.append({"h": float(h), "rho": value, "stderr": math.sqrt(value * (1.0 - value) / sample.size)})
    return rows


def dyadic_masses(sample: PullbackSample, level: int) -> np.ndarray:
    """m_φ(W_{n,j}) for j = 0..2^n - 1."""
    keep = sample.modulus >= 1.0 - 2.0 ** -level
    counts = np.bincount(band_index(sample.angle[keep], level), minlength=2 ** level)
    return counts / sample.size


@dataclass
class LueckingSums:
    """Partial sums of Σ_n Σ_j [2^n m_φ(W_{n,j})]^{p/2}."""
    p: float
    levels: List[int]
    partial_sums: List[float]
    verdict: GrowthVerdict
    low_count_levels: List[int]

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "levels": self.levels,
            "partial_sums": self.partial_sums,
            "verdict": self.verdict.value,
            "low_count_levels": self.low_count_levels,
        }


def luecking_sum(sample: PullbackSample, p: float, n_max: int) -> LueckingSums:
    """
    Partial sums S_n = Σ_{k<=n} Σ_j [2^k m_φ(W_{k,j})]^{p/2}, n = 1..n_max.

    Args:
        sample (PullbackSample): Pull-back sample
        p (float): Schatten exponent > 0
        n_max (int): Deepest level, at most log2(M) - 4

    Returns:
        LueckingSums with a divergence verdict

    Raises:
        ConfigurationError: If p <= 0 or n_max is out of range
    """
    if p <= 0:
        raise ConfigurationError(f"Schatten exponent must be positive, got {p}")
    limit = int(math.log2(sample.size)) - 4
    if not 1 <= n_max <= limit:
        raise ConfigurationError(f"n_max must lie in 1..{limit} for M = {sample.size}")
    total = 0.0
    sums, low = [], []
    for n in range(1, n_max + 1):
        masses = dyadic_masses(sample, n)
        occupied = masses[masses > 0]
        if occupied.size and np.min(occupied) * sample.size < MIN_WINDOW_COUNT:
            low.append(n)
        total += math.fsum((2.0 ** n * occupied) ** (p / 2.0))
        sums.append(total)
    if low:
        logger.warning("Luecking sum: windows with < %d samples at levels %s", MIN_WINDOW_COUNT, low)
    return LueckingSums(float(p), list(range(1, n_max + 1)), sums, divergence_verdict(sums), low)


@dataclass
class ClosedRangeResult:
    """Outcome of the μ[W(ξ,h)] >= c·h test."""
    c_est: float
    threshold: float
    consistent: bool
    per_size: List[Dict[str, float]]

    @property
    def verdict(self) -> str:
        return "closed-range-consistent" if self.consistent else "fails"

    def to_dict(self) -> dict:
        return {
            "c_est": self.c_est,
            "threshold": self.threshold,
            "verdict": self.verdict,
            "per_size": self.per_size,
        }


def closed_range_test(sample: PullbackSample, sizes: Sequence[float], centers: Optional[int] = None) -> ClosedRangeResult:
    """
    Estimate c = min over h and ξ of m_φ(W(ξ,h))/h.

    Args:
        sample (PullbackSample): Pull-back sample
        sizes: Window sizes, each >= 10/M
        centers (int, optional): Center grid size

    Returns:
        ClosedRangeResult; consistent when c_est > 3·max(stderr/h)

    Raises:
        StatisticalFloorError: If some h is below 10/M
    """
    check_resolution(sample, sizes)
    rows = []
    for h in sizes:
        _size(h)
        counts = _window_counts(sample, h, center_grid(h, centers))
        low = float(np.min(counts)) / sample.size
        stderr = math.sqrt(low * (1.0 - low) / sample.size)
        rows.append({"h": float(h), "min_measure": low, "ratio": low / h, "stderr_ratio": stderr / h})
    c_est = min(row["ratio"] for row in rows)
    threshold = 3.0 * max(row["stderr_ratio"] for row in rows)
    return ClosedRangeResult(c_est, threshold, c_est > threshold, rows)


def carleson_constant(sample: PullbackSample, sizes: Sequence[float]) -> Tuple[float, List[Dict[str, float]]]:
    """
    sup over ξ of m_φ(S(ξ, x))/x for each size x.

    Returns:
        (max ratio, rows {"x", "ratio"})
    """
    rows = []
    for x in sizes:
        _size(x)
        near = sample.values[sample.modulus >= 1.0 - x]
        best = 0
        for c in center_grid(x):
            best = max(best, int(np.count_nonzero(np.abs(near - np.exp(1j * c)) <= x)))
        rows.append({"x": float(x), "ratio": best / sample.size / x})
    return max(row["ratio"] for row in rows), rows


def arc_collar_mass(sample: PullbackSample, h: float, collar: Optional[float] = None) -> float:
    """
    Minimum over arcs I of length h of m_φ(collar of I)/h.

    The collar of I is {z: arg z in I, 1 - collar <= |z| <= 1}; collar defaults to h.
    """
    _size(h)
    depth = h if collar is None else float(collar)
    angles = np.sort(sample.angle[sample.modulus >= 1.0 - depth])
    extended = np.concatenate([angles - TWO_PI, angles, angles + TWO_PI])
    centers = center_grid(h / 2.0)
    inside = (np.searchsorted(extended, centers + h / 2.0, side="right")
              - np.searchsorted(extended, centers - h / 2.0, side="left"))
    return float(np.min(inside)) / sample.size / h


def test_function_norm(n: int, p: float) -> float:
    """
    ∫_{-π}^{π} |cos(t/2)|^{pN} dt, the p-th power norm of f_N(z) = ((1+z)/2)^N up to 2π.

    Args:
        n (int): N >= 1
        p (float): Exponent >= 1

    Returns:
        float: Integral value, absolute error <= 1e-10
    """
    if int(n) != n or n < 1:
        raise ConfigurationError(f"N must be a positive integer, got {n}")
    if p < 1:
        raise ConfigurationError(f"p must be >= 1, got {p}")
    s = p * n
    # the integrand is below exp(-200) past this point
    upper = min(np.pi, 40.0 / math.sqrt(s))
    value, error = integrate.quad(
        lambda t: math.cos(0.5 * t) ** s, 0.0, upper, epsabs=1e-13, epsrel=1e-13, limit=200
    )
    if error > 5e-11:
        raise NumericalError(f"f_N quadrature error {error:.3g} too large for N = {n}, p = {p}")
    return 2.0 * value


def wallis_closed_form(n: int, p: float) -> float:
    """2√π Γ((s+1)/2)/Γ(s/2 + 1) with s = pN."""
    s = p * n
    return 2.0 * math.sqrt(math.pi) * math.exp(special.gammaln(0.5 * (s + 1)) - special.gammaln(0.5 * s + 1))


def embedding_ratio(sample: PullbackSample, n: int, p: float) -> float:
    """
    ‖f_N‖^p in L^p(m_φ) divided by ‖f_N‖^p in L^p of the circle.

    Args:
        sample (PullbackSample): Pull-back sample
        n (int): N
        p (float): Exponent >= 1

    Returns:
        float: Ratio; stays bounded below for closed-range symbols
    """
    with np.errstate(under="ignore"):
        pulled = float(np.mean(np.abs(0.5 * (1.0 + sample.values)) ** (p * n)))
    return pulled / (test_function_norm(n, p) / TWO_PI)
