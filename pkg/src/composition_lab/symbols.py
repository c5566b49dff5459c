# -*- coding: utf-8 -*-
"""
Analytic self-maps of the unit disk: evaluation, radial boundary values and
preimage solvers.
"""

import logging
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial import polynomial as P

from .blaschke import EquidistributedFactor, SlowBlaschkeSpec, eval_factor, eval_slow_blaschke
from .exceptions import ConfigurationError, NumericalError, SolverUnavailableError
from .internal.roots import cluster_roots, polynomial_roots

logger = logging.getLogger(__name__)

ComplexLike = Union[complex, np.ndarray]
Preimage = Tuple[complex, int]

DEFAULT_BOUNDARY_EPSILON = 1e-6
MIN_BOUNDARY_EPSILON = 2.0 ** -50
CONVERGENCE_TOL = 1e-4
RESIDUAL_TOL = 1e-10
INSIDE_MARGIN = 1e-14
LFT_GRID = 2 ** 10


class SymbolKind(Enum):
    """Symbol zoo."""
    IDENTITY = "identity"
    SCALING = "scaling"
    MONOMIAL = "monomial"
    LFT = "lft"
    BLASCHKE = "blaschke"
    SLOW = "slow"
    PUNCTURED = "punctured"
    SQUARED_AUTOMORPHISM = "squared_automorphism"


class SymbolMap:
    """
    Base class for analytic self-maps φ of the disk.

    Subclasses implement evaluate and, when they can, solve.
    """

    kind: SymbolKind
    valence: Union[int, str] = 1
    has_preimages: bool = True
    is_inner: bool = False

    @property
    def boundary_epsilon(self) -> float:
        """Radial offset at which boundary values are sampled."""
        return DEFAULT_BOUNDARY_EPSILON

    @property
    def sup_norm(self) -> Optional[float]:
        """‖φ‖∞ when known in closed form."""
        return None if not self.is_inner else 1.0

    @property
    def label(self) -> str:
        return self.kind.value

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def solve(self, w: complex) -> List[Preimage]:
        raise SolverUnavailableError(f"no solver for symbol kind '{self.kind.value}'")

    def to_dict(self) -> dict:
        return {"kind": self.kind.value}

    def __call__(self, z: ComplexLike) -> ComplexLike:
        return eval_symbol(self, z)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_dict()})"


class IdentitySymbol(SymbolMap):
    kind = SymbolKind.IDENTITY
    is_inner = True

    def evaluate(self, z):
        return z

    def solve(self, w):
        return [(complex(w), 1)]


class ScalingSymbol(SymbolMap):
    kind = SymbolKind.SCALING

    def __init__(self, s: float):
        if not 0.0 < s < 1.0:
            raise ConfigurationError(f"scaling factor must lie in (0, 1), got {s}")
        self.s = float(s)

    @property
    def sup_norm(self):
        return self.s

    @property
    def label(self):
        return f"scaling:{self.s:g}"

    def evaluate(self, z):
        return self.s * z

    def solve(self, w):
        z = complex(w) / self.s
        return [(z, 1)] if abs(z) < 1.0 - INSIDE_MARGIN else []

    def to_dict(self):
        return {"kind": self.kind.value, "s": self.s}


class MonomialSymbol(SymbolMap):
    kind = SymbolKind.MONOMIAL
    is_inner = True

    def __init__(self, k: int):
        if int(k) != k or k < 1:
            raise ConfigurationError(f"monomial degree must be a positive integer, got {k}")
        self.k = int(k)
        self.valence = self.k

    @property
    def label(self):
        return f"monomial:{self.k}"

    def evaluate(self, z):
        return np.power(z, self.k)

    def solve(self, w):
        w = complex(w)
        if w == 0:
            return [(0j, self.k)]
        radius = abs(w) ** (1.0 / self.k)
        angles = (np.angle(w) + 2.0 * np.pi * np.arange(self.k)) / self.k
        return [(complex(z), 1) for z in radius * np.exp(1j * angles)]

    def to_dict(self):
        return {"kind": self.kind.value, "k": self.k}


class LinearFractionalSymbol(SymbolMap):
    """φ(z) = (az + b)/(cz + d), checked to map the disk into itself."""

    kind = SymbolKind.LFT

    def __init__(self, a: complex, b: complex, c: complex, d: complex):
        self.a, self.b, self.c, self.d = (complex(v) for v in (a, b, c, d))
        if self.a * self.d - self.b * self.c == 0:
            raise ConfigurationError("linear-fractional map is degenerate (ad - bc = 0)")
        if self.c != 0 and abs(self.d / self.c) <= 1.0:
            raise ConfigurationError("linear-fractional map has a pole in the closed disk")
        if self.c == 0 and self.d == 0:
            raise ConfigurationError("linear-fractional map has no finite value")
        grid = np.exp(2j * np.pi * np.arange(LFT_GRID) / LFT_GRID)
        edge = np.abs(self.evaluate(grid))
        if np.max(edge) > 1.0 + 1e-12:
            raise ConfigurationError(
                f"linear-fractional map is not a self-map: |φ| reaches {np.max(edge):.6g} on the circle"
            )
        self.is_inner = bool(np.all(np.abs(edge - 1.0) < 1e-12))

    def evaluate(self, z):
        return (self.a * z + self.b) / (self.c * z + self.d)

    def solve(self, w):
        w = complex(w)
        denom = self.a - self.c * w
        if denom == 0:
            return []
        z = (self.d * w - self.b) / denom
        return [(z, 1)] if abs(z) < 1.0 - INSIDE_MARGIN else []

    def to_dict(self):
        return {
            "kind": self.kind.value,
            **{name: [value.real, value.imag] for name, value in
               (("a", self.a), ("b", self.b), ("c", self.c), ("d", self.d))},
        }


class FiniteBlaschkeSymbol(SymbolMap):
    """φ(z) = λ ∏ G_i(z) for equidistributed factors G_i and a unimodular λ."""

    kind = SymbolKind.BLASCHKE
    is_inner = True

    def __init__(self, factors: Sequence[EquidistributedFactor], rotation: float = 0.0):
        if not factors:
            raise ConfigurationError("finite Blaschke symbol needs at least one factor")
        self.factors = tuple(factors)
        self.rotation = float(rotation)
        self.valence = sum(f.p for f in self.factors)

    @property
    def label(self):
        return "blaschke:" + "+".join(f"{f.p}@{f.r:g}" for f in self.factors)

    def evaluate(self, z):
        out = np.exp(1j * self.rotation) * np.ones_like(z, dtype=complex)
        for factor in self.factors:
            out = out * eval_factor(factor, z)
        return out

    def solve(self, w):
        w = complex(w)
        numer = np.array([np.exp(1j * self.rotation)], dtype=complex)
        denom = np.array([1.0], dtype=complex)
        for f in self.factors:
            rp = f.r ** f.p
            num_i = np.zeros(f.p + 1, dtype=complex)
            den_i = np.zeros(f.p + 1, dtype=complex)
            num_i[0], num_i[-1] = -rp, 1.0
            den_i[0], den_i[-1] = -1.0, rp
            numer = P.polymul(numer, num_i)
            denom = P.polymul(denom, den_i)
        roots = polynomial_roots(P.polysub(numer, w * denom))
        inside = roots[np.abs(roots) < 1.0 - INSIDE_MARGIN]
        if inside.size != roots.size:
            logger.warning("%d of %d preimages of %s graze the boundary", roots.size - inside.size, roots.size, w)
        return cluster_roots(inside)

    def to_dict(self):
        return {
            "kind": self.kind.value,
            "factors": [f.to_dict() for f in self.factors],
            "rotation": self.rotation,
        }


class SlowBlaschkeSymbol(SymbolMap):
    """Truncated slow Blaschke product; evaluation only."""

    kind = SymbolKind.SLOW
    valence = "infinite"
    has_preimages = False
    is_inner = True

    def __init__(self, spec: SlowBlaschkeSpec, source: Optional[str] = None):
        self.spec = spec
        self.source = source

    @property
    def boundary_epsilon(self):
        eps = DEFAULT_BOUNDARY_EPSILON * self.spec.h(self.spec.depth)
        if eps < MIN_BOUNDARY_EPSILON:
            logger.warning(
                "depth %d is too deep for stable radial sampling; ε floored at 2^-50",
                self.spec.depth
            )
        return max(eps, MIN_BOUNDARY_EPSILON)

    @property
    def label(self):
        return f"slow:depth{self.spec.depth}"

    def evaluate(self, z):
        return eval_slow_blaschke(self.spec, z)

    def to_dict(self):
        if self.source:
            return {"kind": self.kind.value, "spec": self.source}
        return {"kind": self.kind.value, "spec": self.spec.to_dict()}


class PuncturedDiskSymbol(SymbolMap):
    """φ(z) = exp(-(1+z)/(1-z)), onto the punctured disk."""

    kind = SymbolKind.PUNCTURED
    valence = "infinite"
    has_preimages = False
    is_inner = True

    @property
    def boundary_epsilon(self):
        # radial values converge like exp(-2ε/θ²) near θ = 0
        return 1e-9

    def evaluate(self, z):
        return np.exp(-(1.0 + z) / (1.0 - z))


class SquaredAutomorphismSymbol(SymbolMap):
    """((φ(z) - α)/(1 - conj(α)φ(z)))² for a base symbol φ; evaluation only."""

    kind = SymbolKind.SQUARED_AUTOMORPHISM
    has_preimages = False

    def __init__(self, base: SymbolMap, alpha: complex):
        if abs(alpha) >= 1:
            raise ConfigurationError(f"automorphism parameter must lie in the disk, got {alpha}")
        self.base = base
        self.alpha = complex(alpha)
        self.is_inner = base.is_inner
        self.valence = base.valence if isinstance(base.valence, str) else 2 * base.valence

    @property
    def boundary_epsilon(self):
        return self.base.boundary_epsilon

    @property
    def label(self):
        return f"sq-auto({self.base.label})"

    def evaluate(self, z):
        w = self.base.evaluate(z)
        return ((w - self.alpha) / (1.0 - np.conj(self.alpha) * w)) ** 2

    def to_dict(self):
        return {
            "kind": self.kind.value,
            "base": self.base.to_dict(),
            "alpha": [self.alpha.real, self.alpha.imag],
        }


def eval_symbol(symbol: SymbolMap, z: ComplexLike) -> ComplexLike:
    """
    Evaluate φ at interior point(s).

    Args:
        symbol (SymbolMap): Symbol
        z: Point(s) with |z| < 1

    Returns:
        φ(z), complex or array matching the input

    Raises:
        ConfigurationError: If a point lies outside the open disk
    """
    arr = np.asarray(z, dtype=complex)
    if np.any(np.abs(arr) >= 1.0):
        raise ConfigurationError("symbols are evaluated in the open disk")
    out = np.asarray(symbol.evaluate(arr), dtype=complex)
    return complex(out) if out.ndim == 0 else out


def radial_boundary_value(
    symbol: SymbolMap,
    theta: Union[float, np.ndarray],
    epsilon: Optional[float] = None
) -> Tuple[ComplexLike, Union[bool, np.ndarray]]:
    """
    Approximate the boundary value φ*(e^{iθ}) by φ((1-ε)e^{iθ}).

    A sample is unconverged when the values at ε and ε/2 differ by more than 1e-4.

    Args:
        symbol (SymbolMap): Symbol
        theta: Angle(s)
        epsilon (float, optional): Radial offset, defaults to symbol.boundary_epsilon

    Returns:
        (values, unconverged): Values at ε and the unconverged flags

    Raises:
        ConfigurationError: If ε is outside (0, 1e-3]
    """
    eps = symbol.boundary_epsilon if epsilon is None else float(epsilon)
    if not 0.0 < eps <= 1e-3:
        raise ConfigurationError(f"boundary offset must lie in (0, 1e-3], got {eps}")
    unit = np.exp(1j * np.asarray(theta, dtype=float))
    first = np.asarray(symbol.evaluate((1.0 - eps) * unit), dtype=complex)
    second = np.asarray(symbol.evaluate((1.0 - 0.5 * eps) * unit), dtype=complex)
    unconverged = np.abs(first - second) > CONVERGENCE_TOL
    if first.ndim == 0:
        return complex(first), bool(unconverged)
    return first, unconverged


def preimages(symbol: SymbolMap, w: complex) -> List[Preimage]:
    """
    All solutions of φ(z) = w in the disk, with multiplicity.

    Args:
        symbol (SymbolMap): Symbol with preimage capability
        w (complex): Target point in the disk

    Returns:
        List of (z, multiplicity)

    Raises:
        SolverUnavailableError: For kinds without a solver
        ConfigurationError: If w lies outside the disk
        NumericalError: If a returned root misses the residual tolerance
    """
    if not symbol.has_preimages:
        raise SolverUnavailableError(f"no solver for symbol kind '{symbol.kind.value}'")
    if abs(w) >= 1.0:
        raise ConfigurationError(f"preimage target must lie in the disk, got {w}")
    found = symbol.solve(w)
    if found:
        zs = np.array([z for z, _ in found])
        residual = np.abs(symbol.evaluate(zs) - w)
        if np.max(residual) > RESIDUAL_TOL:
            raise NumericalError(f"preimage residual {np.max(residual):.3g} exceeds {RESIDUAL_TOL:g}")
    return found


def check_self_map(symbol: SymbolMap, samples: int = 10_000, seed: int = 0) -> bool:
    """
    Check |φ(z)| < 1 on random interior points and |φ*| <= 1 + 1e-9 on a boundary grid.

    Args:
        symbol (SymbolMap): Symbol
        samples (int): Interior sample count
        seed (int): Random seed

    Returns:
        bool: True when both checks pass
    """
    rng = np.random.default_rng(seed)
    z = np.sqrt(rng.uniform(0.0, 1.0, samples)) * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, samples))
    z = z[np.abs(z) < 1.0]
    inside = np.abs(symbol.evaluate(z)) < 1.0 + 1e-12
    values, _ = radial_boundary_value(symbol, np.linspace(0.0, 2.0 * np.pi, 1024, endpoint=False))
    return bool(np.all(inside) and np.all(np.abs(values) <= 1.0 + 1e-9))
