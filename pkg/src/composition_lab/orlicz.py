# -*- coding: utf-8 -*-
"""
Orlicz functions, their generalized inverses and the decay functions derived from them.

All evaluations are vectorized over numpy arrays; scalars in, floats out.
"""

import csv
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np

from .exceptions import ConfigurationError, NumericalError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray, Sequence[float]]

# Ψ must exceed this somewhere on the probe grid
GROWTH_PROBE_LEVEL = 1e12
MIDPOINT_SLACK = 1e-12
MAX_DOUBLINGS = 1100
MAX_BISECTIONS = 2200
TINY = np.finfo(float).tiny


class OrliczFamily(Enum):
    """Supported Orlicz families."""
    POWER = "power"
    EXPONENTIAL = "exp"
    TABLE = "table"


class OrliczFunction:
    """
    A convex nondecreasing gauge Ψ with Ψ(0) = 0 and Ψ(x) → ∞.

    Instances are immutable; build them with make_orlicz or load_orlicz_table.
    """

    def __init__(
        self,
        family: OrliczFamily,
        parameter: Optional[float] = None,
        table: Optional[Tuple[np.ndarray, np.ndarray]] = None,
        source: Optional[str] = None
    ):
        """
        Initialize an Orlicz function.

        Args:
            family (OrliczFamily): Family tag
            parameter (float, optional): Exponent p (power) or a (exponential)
            table (tuple, optional): Strictly increasing (x, Ψ(x)) arrays, table family only
            source (str, optional): Where the table came from, kept for reports

        Raises:
            ConfigurationError: If the family parameters are invalid
        """
        self.family = family
        self.parameter = None if parameter is None else float(parameter)
        self.source = source
        self._log_x = None
        self._log_y = None
        self._slopes = None

        if family in (OrliczFamily.POWER, OrliczFamily.EXPONENTIAL):
            if self.parameter is None or not np.isfinite(self.parameter) or self.parameter < 1:
                raise ConfigurationError(
                    f"{family.value} family needs a parameter >= 1, got {parameter}"
                )
        elif family is OrliczFamily.TABLE:
            if table is None:
                raise ConfigurationError("table family needs (x, Ψ(x)) pairs")
            self._set_table(*table)
        else:
            raise ConfigurationError(f"Unknown Orlicz family: {family}")

    def _set_table(self, xs: ArrayLike, ys: ArrayLike) -> None:
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        if xs.ndim != 1 or xs.shape != ys.shape or xs.size < 2:
            raise ConfigurationError("Orlicz table needs at least two (x, Ψ(x)) rows")
        if np.any(xs <= 0) or np.any(ys <= 0) or not np.all(np.isfinite(xs)) or not np.all(np.isfinite(ys)):
            raise ConfigurationError("Orlicz table entries must be finite and positive")
        if np.any(np.diff(xs) <= 0):
            raise ConfigurationError("Orlicz table x column must be strictly increasing")
        if np.any(np.diff(ys) <= 0):
            # flats make the generalized inverse ambiguous
            raise ConfigurationError("Orlicz table Ψ column must be strictly increasing (flats rejected)")
        self._log_x = np.log(xs)
        self._log_y = np.log(ys)
        self._slopes = np.diff(self._log_y) / np.diff(self._log_x)

    @property
    def label(self) -> str:
        """Short identifier used in reports."""
        if self.family is OrliczFamily.TABLE:
            return f"table:{self.source or 'inline'}"
        return f"{self.family.value}:{self.parameter:g}"

    def __call__(self, x: ArrayLike) -> Union[float, np.ndarray]:
        """
        Evaluate Ψ.

        Args:
            x: Nonnegative argument(s)

        Returns:
            Ψ(x), float or array matching the input
        """
        arr = np.asarray(x, dtype=float)
        with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
            if self.family is OrliczFamily.POWER:
                out = np.power(arr, self.parameter)
            elif self.family is OrliczFamily.EXPONENTIAL:
                out = np.expm1(np.power(arr, self.parameter))
            else:
                out = self._eval_table(arr)
        out = np.where(arr <= 0, 0.0, out)
        return float(out) if out.ndim == 0 else out

    def _eval_table(self, arr: np.ndarray) -> np.ndarray:
        lx = np.log(np.where(arr > 0, arr, 1.0))
        idx = np.clip(np.searchsorted(self._log_x, lx) - 1, 0, self._slopes.size - 1)
        ly = self._log_y[idx] + self._slopes[idx] * (lx - self._log_x[idx])
        return np.exp(ly)

    def inverse(self, y: ArrayLike) -> Union[float, np.ndarray]:
        """Shorthand for psi_inverse(self, y)."""
        return psi_inverse(self, y)

    def to_dict(self) -> dict:
        """
        Convert to the JSON spec form.

        Returns:
            dict: {"family": ..., parameter or table}
        """
        if self.family is OrliczFamily.POWER:
            return {"family": "power", "p": self.parameter}
        if self.family is OrliczFamily.EXPONENTIAL:
            return {"family": "exp", "a": self.parameter}
        return {
            "family": "table",
            "x": np.exp(self._log_x).tolist(),
            "y": np.exp(self._log_y).tolist(),
        }

    def __repr__(self) -> str:
        return f"OrliczFunction({self.label})"


def make_orlicz(
    family: Union[str, OrliczFamily],
    parameter: Optional[float] = None,
    table: Optional[Tuple[ArrayLike, ArrayLike]] = None
) -> OrliczFunction:
    """
    Build an Orlicz function from a family tag.

    Args:
        family: "power", "exp" or "table"
        parameter (float, optional): p for x^p, a for exp(x^a) - 1
        table (tuple, optional): (x, Ψ(x)) arrays for the table family

    Returns:
        OrliczFunction: Validated Orlicz function

    Raises:
        ConfigurationError: If the parameter is < 1 or the result is not an Orlicz function
    """
    try:
        tag = OrliczFamily(family) if not isinstance(family, OrliczFamily) else family
    except ValueError:
        raise ConfigurationError(f"Unknown Orlicz family: {family!r}")
    psi = OrliczFunction(tag, parameter=parameter, table=table)
    validate_orlicz(psi)
    return psi


def load_orlicz_table(path: str) -> OrliczFunction:
    """
    Load a user-supplied Orlicz table from a CSV of (x, Ψ(x)) rows.

    A header row is allowed. Values are interpolated linearly in log-log space and
    extrapolated with the end slopes.

    Args:
        path (str): CSV file path

    Returns:
        OrliczFunction: Validated table-family Orlicz function

    Raises:
        ConfigurationError: If the file is unreadable or the table is not monotone/convex
    """
    xs, ys = [], []
    try:
        with open(path, newline="", encoding="utf-8") as handle:
            for row in csv.reader(handle):
                if not row or row[0].strip().startswith("#"):
                    continue
                try:
                    x, y = float(row[0]), float(row[1])
                except (ValueError, IndexError):
                    if xs:
                        raise ConfigurationError(f"Malformed Orlicz table row: {row}")
                    continue  # header
                xs.append(x)
                ys.append(y)
    except OSError as e:
        raise ConfigurationError(f"Cannot read Orlicz table {path}: {str(e)}") from e
    psi = OrliczFunction(OrliczFamily.TABLE, table=(np.array(xs), np.array(ys)), source=path)
    validate_orlicz(psi)
    return psi


def validate_orlicz(psi: OrliczFunction) -> None:
    """
    Check the OrliczFunction invariants on probe grids.

    Raises:
        ConfigurationError: Naming the first invariant that fails
    """
    if psi(0.0) != 0.0:
        raise ConfigurationError(f"{psi.label}: Ψ(0) must be 0")

    grid = np.concatenate([[0.0], np.geomspace(2.0 ** -30, 2.0 ** 60, 541)])
    values = psi(grid)
    finite = np.isfinite(values)
    if np.any(np.diff(values[finite]) < 0):
        raise ConfigurationError(f"{psi.label}: Ψ is not nondecreasing on the probe grid")

    xs = grid[finite][:-1]
    ys = grid[finite][1:]
    for a, b in ((xs, ys), (xs[:-1], ys[1:]), (np.zeros_like(xs), xs)):
        mid = psi(0.5 * (a + b))
        chord = 0.5 * (psi(a) + psi(b))
        ok = ~np.isfinite(chord) | (mid <= chord * (1 + MIDPOINT_SLACK) + TINY)
        if not np.all(ok):
            raise ConfigurationError(f"{psi.label}: midpoint convexity fails on the probe grid")

    if not np.any(values > GROWTH_PROBE_LEVEL):
        raise ConfigurationError(f"{psi.label}: Ψ does not exceed {GROWTH_PROBE_LEVEL:g} on the probe grid")


def psi_inverse(psi: OrliczFunction, y: ArrayLike) -> Union[float, np.ndarray]:
    """
    Left-continuous generalized inverse of Ψ by bracketing and bisection.

    Returns the smallest representable x with Ψ(x) >= y. psi_inverse(Ψ, 0) = 0 and
    psi_inverse(Ψ, inf) = inf.

    Args:
        psi (OrliczFunction): Orlicz function
        y: Nonnegative target value(s)

    Returns:
        x, float or array matching the input

    Raises:
        ConfigurationError: If y is negative or NaN
        NumericalError: If no bracket is found below the overflow probe
    """
    target = np.asarray(y, dtype=float)
    scalar = target.ndim == 0
    target = np.atleast_1d(target).astype(float).ravel()
    if np.any(np.isnan(target)) or np.any(target < 0):
        raise ConfigurationError("psi_inverse needs y >= 0")

    result = np.zeros_like(target)
    result[np.isinf(target)] = np.inf
    active = np.flatnonzero((target > 0) & np.isfinite(target))
    if active.size:
        result[active] = _bisect(psi, target[active])
    return float(result[0]) if scalar else result.reshape(np.shape(y))


def _bisect(psi: OrliczFunction, y: np.ndarray) -> np.ndarray:
    lo = np.zeros_like(y)
    hi = np.ones_like(y)
    for _ in range(MAX_DOUBLINGS):
        short = psi(hi) < y
        if not short.any():
            break
        lo = np.where(short, hi, lo)
        hi = np.where(short, hi * 2.0, hi)
        if np.any(np.isinf(hi)):
            raise NumericalError(f"{psi.label}: no bracket found below the overflow probe")
    else:
        raise NumericalError(f"{psi.label}: no bracket found below the overflow probe")

    for iteration in range(MAX_BISECTIONS):
        open_ = (hi - lo) > np.spacing(hi)
        if not open_.any():
            logger.debug("psi_inverse converged after %d bisections", iteration)
            break
        mid = 0.5 * (lo + hi)
        up = psi(mid) >= y
        hi = np.where(open_ & up, mid, hi)
        lo = np.where(open_ & ~up, mid, lo)
    else:
        raise NumericalError(f"{psi.label}: bisection did not reach machine resolution")
    return hi


@dataclass(frozen=True)
class DecayFunction:
    """
    A decay rate δ: (0,1) → (0, 1/2] with δ(t) → 0 as t → 0.

    Attributes:
        raw: Unclamped rate
        provenance: "from-psi" or "user"
        psi: Orlicz function δ was derived from, if any
    """
    raw: Callable[[np.ndarray], np.ndarray]
    provenance: str = "user"
    psi: Optional[OrliczFunction] = field(default=None, compare=False)

    def __call__(self, t: ArrayLike) -> Union[float, np.ndarray]:
        arr = np.asarray(t, dtype=float)
        if np.any(arr <= 0) or np.any(arr >= 1):
            raise ConfigurationError("δ is defined on (0, 1)")
        with np.errstate(over="ignore", divide="ignore"):
            out = np.clip(np.asarray(self.raw(arr), dtype=float), TINY, 0.5)
        return float(out) if out.ndim == 0 else out

    def is_monotone(self, probes: Optional[np.ndarray] = None) -> bool:
        """
        Check that δ is nondecreasing in t on a probe grid, i.e. nonincreasing as t → 0.

        Args:
            probes (np.ndarray, optional): Increasing t values in (0,1)

        Returns:
            bool: True if the sampled values never decrease
        """
        if probes is None:
            probes = np.geomspace(1e-300, 0.999, 4096)
        values = self(probes)
        return bool(np.all(np.diff(values) >= -1e-12 * values[1:]))

    def tends_to_zero(self) -> bool:
        """Check δ(t) decreases along t = 10^-k, k = 1..300, and ends well below its start."""
        probes = 10.0 ** -np.arange(1, 301, dtype=float)
        values = self(probes)
        return bool(np.all(np.diff(values) <= 1e-12 * values[:-1]) and values[-1] <= 0.5 * values[0])

    def to_dict(self) -> dict:
        if self.psi is not None:
            return {"provenance": self.provenance, "psi": self.psi.to_dict()}
        return {"provenance": self.provenance}


def delta_from_psi(psi: OrliczFunction) -> DecayFunction:
    """
    Decay rate δ(t) = min(1/2, 1/Ψ(√Ψ^{-1}(1/t))) attached to an Orlicz function.

    Args:
        psi (OrliczFunction): Orlicz function

    Returns:
        DecayFunction: The clamped rate, provenance "from-psi"
    """
    def raw(t: np.ndarray) -> np.ndarray:
        inner = np.sqrt(psi_inverse(psi, 1.0 / np.asarray(t, dtype=float)))
        return 1.0 / np.asarray(psi(inner), dtype=float)

    delta = DecayFunction(raw=raw, provenance="from-psi", psi=psi)
    if not delta.tends_to_zero():
        logger.warning("δ derived from %s does not visibly tend to 0 on probes", psi.label)
    return delta


def orlicz_ratio(psi: OrliczFunction, t: ArrayLike) -> Union[float, np.ndarray]:
    """
    Pre-clamp ratio Ψ^{-1}(1/δ(t)) / Ψ^{-1}(1/t) for δ = delta_from_psi(Ψ).

    Equals 1/√(Ψ^{-1}(1/t)) up to rounding.

    Args:
        psi (OrliczFunction): Orlicz function
        t: Values in (0, 1)

    Returns:
        Ratio, float or array matching the input
    """
    delta = delta_from_psi(psi)
    t_arr = np.asarray(t, dtype=float)
    raw = np.asarray(delta.raw(t_arr), dtype=float)
    ratio = np.asarray(psi_inverse(psi, 1.0 / raw)) / np.asarray(psi_inverse(psi, 1.0 / t_arr))
    return float(ratio) if ratio.ndim == 0 else ratio
